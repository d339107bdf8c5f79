"""Exact filling-area oracles for small loops."""
import logging
from collections import defaultdict
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from dehnlab.errors import DomainError, NotALoopError, UnsupportedGroupError
from dehnlab.fill.central import central_coordinates, central_extension
from dehnlab.group.catalog import GroupSpec, is_loop
from dehnlab.group.words import (
    LAZY,
    LazyWord,
    cyclic_reduce,
    format_word,
    invert_word,
    strip_lazy,
)

DEFAULT_NODE_LIMIT = 2_000_000

logger = logging.getLogger("fill_logger")


def _column_windings(w: Sequence[int]) -> Dict[int, np.ndarray]:
    """Winding numbers of the unit cells of a Z^2 loop, column by column."""
    if any(abs(x) > 2 for x in w):
        raise DomainError(f"{format_word(w)} is not a word over the two generators of z2")
    x = y = 0
    edges = defaultdict(list)
    for letter in w:
        if letter == 1:
            edges[x].append((y, -1))
            x += 1
        elif letter == -1:
            x -= 1
            edges[x].append((y, 1))
        elif letter == 2:
            y += 1
        elif letter == -2:
            y -= 1
    if (x, y) != (0, 0):
        raise NotALoopError(f"{format_word(w)} ends at ({x}, {y}), not at the origin")
    out = {}
    for col, es in edges.items():
        hs = [h for h, _ in es]
        lo, hi = min(hs), max(hs)
        # an edge at height h winds once around every cell of the column below it
        diff = np.zeros(hi - lo + 1, dtype=np.int64)
        for h, s in es:
            diff[h - lo] += s
        suffix = np.cumsum(diff[::-1])[::-1]
        out[col] = suffix[1:]
    return out


def winding_area(w: Sequence[int]) -> int:
    """Sum over unit cells of |winding number|: the filling area of a Z^2 loop."""
    return int(sum(np.abs(v).sum() for v in _column_windings(w).values()))


def signed_area(w: Sequence[int]) -> int:
    return int(sum(v.sum() for v in _column_windings(w).values()))


def _canonical(u: LazyWord) -> LazyWord:
    if not u:
        return u
    inv = invert_word(u)
    return min(
        min(u[j:] + u[:j] for j in range(len(u))),
        min(inv[j:] + inv[:j] for j in range(len(inv))),
    )


def _relator_rotations(relators: Sequence[LazyWord]) -> List[LazyWord]:
    out = set()
    for r in relators:
        for rho in (r, invert_word(r)):
            _, core = cyclic_reduce(rho)
            for j in range(len(core)):
                out.add(core[j:] + core[:j])
    return sorted(out)


class _AreaSearch:
    def __init__(self, spec: GroupSpec, node_limit: int):
        self.spec = spec
        self.rotations = _relator_rotations(spec.relators)
        self.maxlen = max((len(r) for r in self.rotations), default=1)
        self.node_limit = node_limit
        self.nodes = 0
        try:
            self.ext = central_extension(spec)
            effects = [
                sum(abs(c) for c in central_coordinates(self.ext, r)) for r in spec.relators
            ]
            self.effect = max(effects, default=0)
        except UnsupportedGroupError:
            self.ext, self.effect = None, 0

    def heuristic(self, u: LazyWord) -> int:
        h = ceil(len(u) / self.maxlen)
        if self.ext is not None and self.effect > 0:
            ell = sum(abs(c) for c in central_coordinates(self.ext, u))
            h = max(h, ceil(ell / self.effect))
        return h

    def children(self, u: LazyWord):
        m = len(u)
        seen = set()
        for p in range(m):
            v = u[p:] + u[:p]
            for rho in self.rotations:
                k = 0
                while k < min(m, len(rho)) and v[k] == rho[k]:
                    k += 1
                    # rho[:k] equals the inverse of rho[k:] in the group
                    _, child = cyclic_reduce(invert_word(rho[k:]) + v[k:])
                    key = _canonical(child)
                    if key not in seen:
                        seen.add(key)
                        yield child, key

    def run(self, u: LazyWord, budget: int) -> Optional[int]:
        bound = self.heuristic(u)
        while bound <= budget:
            self.memo: Dict[LazyWord, int] = {}
            t = self._dfs(u, 0, bound)
            if t is True:
                return bound
            if t is None or t == float("inf"):
                return None
            bound = t
        return None

    def _dfs(self, u: LazyWord, g: int, bound: int):
        self.nodes += 1
        if self.nodes > self.node_limit:
            return None
        f = g + self.heuristic(u)
        if f > bound:
            return f
        if not u:
            return True
        key = _canonical(u)
        if self.memo.get(key, bound + 1) <= g:
            return float("inf")
        self.memo[key] = g
        least = float("inf")
        for child, _ in self.children(u):
            t = self._dfs(child, g + 1, bound)
            if t is True or t is None:
                return t
            least = min(least, t)
        return least


def exact_area_search(
    spec: GroupSpec,
    w: Sequence[int],
    budget: int = 8,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> Optional[int]:
    """Minimal number of relator applications filling ``w``, or None past the budget.

    Iterative deepening over area on cyclically reduced words. A move matches a
    prefix of a relator rotation against the word and replaces it with the
    inverse of the rest of that rotation.
    """
    if not is_loop(spec, w):
        raise NotALoopError(f"{format_word(w)} is not a loop in {spec.id}")
    _, u = cyclic_reduce(strip_lazy(w))
    if not u:
        return 0
    search = _AreaSearch(spec, node_limit)
    area = search.run(u, budget)
    if area is None:
        logger.debug(
            f"{spec.id}: no filling of {format_word(u)} within area {budget} "
            f"({search.nodes} nodes)"
        )
    return area
