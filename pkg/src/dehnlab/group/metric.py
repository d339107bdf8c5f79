"""Word metric, balls and canonical geodesics.

FreeAbelian groups use the exact L1 formula. All other catalog groups use a
breadth-first ball around the identity that is grown on demand and shared
read-only between callers (one cache per group id).
"""
import logging
from functools import lru_cache
from math import comb, isqrt
from typing import Dict, List, Optional, Tuple

import numpy as np

from dehnlab.errors import BudgetExceededError, CapExceededError, UnsupportedGroupError
from dehnlab.group.catalog import GroupSpec, get_group
from dehnlab.group.law import Class2Law
from dehnlab.group.words import LazyWord, commutator, invert_word, letter_order, power

DEFAULT_RADIUS_CAP = 32
DEFAULT_MAX_ELEMENTS = 4_000_000

logger = logging.getLogger("walk_logger")


class BallCache:
    def __init__(self, spec: GroupSpec, max_elements: int = DEFAULT_MAX_ELEMENTS):
        self.spec = spec
        self.max_elements = max_elements
        e = spec.identity()
        self.dist: Dict[Tuple[int, ...], int] = {e: 0}
        self.layers: List[List[Tuple[int, ...]]] = [[e]]
        self._steps = [spec.letter_element(x) for x in letter_order(spec.generator_count)]

    @property
    def radius(self) -> int:
        return len(self.layers) - 1

    def _next_layer(self) -> Dict[Tuple[int, ...], None]:
        mul = self.spec.law.multiply
        nxt: Dict[Tuple[int, ...], None] = {}
        for g in self.layers[-1]:
            for s in self._steps:
                h = mul(g, s)
                if h not in self.dist:
                    nxt[h] = None
        return nxt

    def expand_to(self, radius: int, strict: bool = True) -> int:
        """Grow the ball to ``radius`` one whole layer at a time.

        A layer that would take the ball past ``max_elements`` is never
        recorded: with ``strict`` the budget error is raised, otherwise growth
        stops at the last layer that fits. Returns the radius reached.
        """
        while self.radius < radius:
            r = self.radius + 1
            nxt = self._next_layer()
            if len(self.dist) + len(nxt) > self.max_elements:
                msg = (
                    f"ball of radius {r} in {self.spec.id} holds {len(self.dist) + len(nxt)} "
                    f"elements, over the budget of {self.max_elements}"
                )
                if strict:
                    raise BudgetExceededError(msg)
                logger.warning(f"{msg}; stopped at radius {self.radius}")
                break
            for h in nxt:
                self.dist[h] = r
            self.layers.append(list(nxt))
            logger.debug(f"{self.spec.id}: ball grown to radius {r} ({len(self.dist)} elements)")
        return self.radius

    def distance(self, g, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
        g = tuple(g)
        while True:
            d = self.dist.get(g)
            if d is not None:
                return d
            if self.radius >= radius_cap:
                raise CapExceededError(
                    f"{g} is farther than the radius cap {radius_cap} in {self.spec.id}",
                    cap=radius_cap,
                )
            self.expand_to(self.radius + 1)

    def lookup(self, g) -> Optional[int]:
        return self.dist.get(tuple(g))


@lru_cache(maxsize=None)
def get_ball_cache(group_id: str) -> BallCache:
    return BallCache(get_group(group_id))


def _is_abelian(spec: GroupSpec) -> bool:
    return spec.family == "FreeAbelian"


def norm(spec: GroupSpec, g, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    """d(e, g); exact L1 norm on FreeAbelian groups, where the cap does not apply."""
    if _is_abelian(spec):
        return sum(abs(int(c)) for c in g)
    return get_ball_cache(spec.id).distance(g, radius_cap)


def word_metric(spec: GroupSpec, x, y, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    # left invariance: d(x, y) = d(e, x^-1 y)
    return norm(spec, spec.multiply(spec.inverse(tuple(x)), tuple(y)), radius_cap)


def _greedy_geodesic(spec: GroupSpec, h, radius_cap: int) -> LazyWord:
    r = norm(spec, h, radius_cap)
    order = letter_order(spec.generator_count)
    cur = spec.identity()
    word = []
    for step in range(r):
        remaining = r - step - 1
        for letter in order:
            nxt = spec.multiply(cur, spec.letter_element(letter))
            rest = spec.multiply(spec.inverse(nxt), h)
            if _distance_is(spec, rest, remaining):
                word.append(letter)
                cur = nxt
                break
        else:
            raise RuntimeError(f"no geodesic continuation found towards {h}")
    return tuple(word)


def _distance_is(spec: GroupSpec, g, value: int) -> bool:
    if _is_abelian(spec):
        return sum(abs(c) for c in g) == value
    return get_ball_cache(spec.id).lookup(g) == value


def geodesic(spec: GroupSpec, x, y, radius_cap: int = DEFAULT_RADIUS_CAP) -> LazyWord:
    """Lexicographically least shortest word from x to y (order a < A < b < B ...).

    Computed on the canonically ordered endpoint pair so that
    geodesic(y, x) is always the inverse of geodesic(x, y).
    """
    x, y = tuple(x), tuple(y)
    if x == y:
        return ()
    if x > y:
        return invert_word(geodesic(spec, y, x, radius_cap))
    h = spec.multiply(spec.inverse(x), y)
    return _greedy_geodesic(spec, h, radius_cap)


def ball_census(spec: GroupSpec, R: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> List[int]:
    """Sphere sizes #S(e, r) for r = 0..R."""
    if _is_abelian(spec):
        sizes = [_l1_sphere(spec.generator_count, r) for r in range(R + 1)]
    else:
        cache = get_ball_cache(spec.id)
        if cache.radius < R:
            saved = cache.max_elements
            cache.max_elements = max_elements
            try:
                cache.expand_to(R)
            finally:
                cache.max_elements = saved
        sizes = [len(cache.layers[r]) for r in range(R + 1)]
    if sum(sizes) > max_elements:
        raise BudgetExceededError(
            f"ball of radius {R} in {spec.id} holds {sum(sizes)} elements, "
            f"over the budget of {max_elements}"
        )
    return sizes


def _l1_sphere(d: int, r: int) -> int:
    # number of points of Z^d with L1 norm exactly r
    if r == 0:
        return 1
    return sum(comb(d, k) * comb(r - 1, k - 1) * 2 ** k for k in range(1, min(d, r) + 1))


def growth_degree(spec: GroupSpec) -> int:
    return spec.growth_degree


def _commutator_pieces(m: int) -> List[Tuple[int, int]]:
    # m = sum p*q, each piece realized by [x^p, y^q] of length 2(p + q)
    pieces = []
    while m > 0:
        p = isqrt(m)
        q = m // p
        pieces.append((p, q))
        m -= p * q
    return pieces


def _commutator_lengths(m) -> np.ndarray:
    """Row-wise total length of the pieces of |m| (see _commutator_pieces)."""
    m = np.abs(np.asarray(m, dtype=np.int64)).copy()
    out = np.zeros(len(m), dtype=np.int64)
    live = m > 0
    while live.any():
        mm = m[live]
        p = np.floor(np.sqrt(mm.astype(np.float64))).astype(np.int64)
        p[p * p > mm] -= 1
        p[(p + 1) * (p + 1) <= mm] += 1
        q = mm // p
        out[live] += 2 * (p + q)
        m[live] = mm - p * q
        live = m > 0
    return out


def _class2_residuals(law: Class2Law, coords: np.ndarray):
    """Central residuals after the prefixes a_1^x1 .. a_k^xk and a_k^xk .. a_1^x1."""
    k = law.rank
    X = coords[:, :k]
    backward = coords[:, k:]
    forward = backward.copy()
    for p, (i, j) in enumerate(law.pairs):
        forward[:, p] -= X[:, i] * X[:, j]
    return forward, backward


def distance_upper_bounds(spec: GroupSpec, coords) -> Optional[np.ndarray]:
    """Length of an explicit word for each coordinate row, so d(e, g) <= bound.

    The word is a generator prefix followed by commutator blocks for the
    central remainder (see upper_bound_word). None when the family has no such
    construction.
    """
    coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
    if _is_abelian(spec):
        return np.abs(coords).sum(axis=1)
    if not isinstance(spec.law, Class2Law):
        return None
    base = np.abs(coords[:, : spec.law.rank]).sum(axis=1)
    forward, backward = _class2_residuals(spec.law, coords)
    f = sum(_commutator_lengths(forward[:, p]) for p in range(forward.shape[1]))
    b = sum(_commutator_lengths(backward[:, p]) for p in range(backward.shape[1]))
    return base + np.minimum(f, b)


def upper_bound_word(spec: GroupSpec, g) -> LazyWord:
    """The word whose length distance_upper_bounds reports for ``g``."""
    g = tuple(int(c) for c in g)
    if _is_abelian(spec):
        return sum((power((i + 1,), x) for i, x in enumerate(g)), ())
    if not isinstance(spec.law, Class2Law):
        raise UnsupportedGroupError(f"no upper bound word construction for {spec.id} ({spec.family})")
    law = spec.law
    row = np.asarray([g], dtype=np.int64)
    forward, backward = _class2_residuals(law, row)
    lengths = [int(_commutator_lengths(r[0]).sum()) for r in (forward, backward)]
    gens = list(enumerate(g[: law.rank]))
    if lengths[0] <= lengths[1]:
        residual = forward[0]
    else:
        residual = backward[0]
        gens = gens[::-1]
    word = sum((power((i + 1,), x) for i, x in gens), ())
    for (i, j), m in zip(law.pairs, residual):
        m = int(m)
        for p, q in _commutator_pieces(abs(m)):
            x, y = power((i + 1,), p), power((j + 1,), q)
            word += commutator(x, y) if m > 0 else commutator(y, x)
    return word
