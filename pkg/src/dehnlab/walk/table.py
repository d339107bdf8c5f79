"""Sparse heat-kernel tables p^(t) and their convolution.

Float tables keep their support as an int64 coordinate array sorted by a
mixed-radix key, so lookups of many elements at once are a single
``searchsorted``. When the coordinate box is too large for a 62-bit key the
table falls back to a tuple index.
"""
import logging
from collections.abc import Sequence
from fractions import Fraction
from math import ceil, isqrt
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from dehnlab.errors import BudgetExceededError, DomainError
from dehnlab.group.catalog import GroupSpec, get_group
from dehnlab.information.write_info import write_csv
from dehnlab.walk.measure import StepMeasure, step_measure

DEFAULT_RELATIVE_FLOOR = 1e-15
DEFAULT_MAX_ENTRIES = 30_000_000
DEFAULT_STORE_BUDGET = 25_000_000
KEY_LIMIT = 2 ** 62

logger = logging.getLogger("walk_logger")


def _box(X: np.ndarray):
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo + 1
    size = 1
    for s in span.tolist():
        size *= int(s)
    return lo, span, size


def _strides(span: np.ndarray) -> np.ndarray:
    strides = np.ones(len(span), dtype=np.int64)
    for i in range(len(span) - 2, -1, -1):
        strides[i] = strides[i + 1] * span[i + 1]
    return strides


def _encode(X: np.ndarray, lo: np.ndarray, strides: np.ndarray) -> np.ndarray:
    return ((X - lo) * strides).sum(axis=1)


class ProbabilityTable:
    def __init__(
        self,
        spec: GroupSpec,
        step_count: int,
        coords: np.ndarray,
        probs: np.ndarray,
        truncation_floor: float = 0.0,
        lost_mass=0.0,
        exact: Optional[Dict[Tuple[int, ...], Fraction]] = None,
        _index=None,
    ):
        self.spec = spec
        self.step_count = step_count
        self.truncation_floor = truncation_floor
        self.lost_mass = lost_mass
        self.exact = exact
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, spec.coordinate_arity)
        probs = np.asarray(probs, dtype=np.float64)
        if _index is None:
            _index = self._build_index(coords)
            if _index[0] == "key":
                order = np.argsort(_index[3], kind="stable")
                coords, probs = coords[order], probs[order]
                _index = ("key", _index[1], _index[2], _index[3][order])
        self.coords = coords
        self.probs = probs
        self._index = _index
        self._hi = None

    @property
    def mode(self) -> str:
        return "rational" if self.exact is not None else "float"

    @property
    def entries(self) -> Dict[Tuple[int, ...], float]:
        if self.exact is not None:
            return dict(self.exact)
        return {tuple(c): float(p) for c, p in zip(self.coords.tolist(), self.probs)}

    @staticmethod
    def _build_index(coords: np.ndarray):
        if len(coords) == 0:
            return ("dict", {})
        lo, span, size = _box(coords)
        if size < KEY_LIMIT:
            strides = _strides(span)
            return ("key", lo, strides, _encode(coords, lo, strides))
        return ("dict", {tuple(c): i for i, c in enumerate(coords.tolist())})

    @property
    def support_size(self) -> int:
        return len(self.probs)

    def max_entry(self) -> float:
        return float(self.probs.max()) if len(self.probs) else 0.0

    def total_mass(self):
        if self.exact is not None:
            return sum(self.exact.values(), Fraction(0)) + self.lost_mass
        return float(np.sum(self.probs)) + float(self.lost_mass)

    def items(self) -> Iterator:
        if self.exact is not None:
            yield from self.exact.items()
        else:
            for c, p in zip(self.coords.tolist(), self.probs.tolist()):
                yield tuple(c), p

    def get(self, x):
        x = tuple(int(c) for c in x)
        if self.exact is not None:
            return self.exact.get(x, Fraction(0))
        return float(self.lookup_rows(np.array([x], dtype=np.int64))[0])

    def __getitem__(self, x):
        return self.get(x)

    def lookup_rows(self, Q) -> np.ndarray:
        """Probabilities of many elements at once; zero outside the support."""
        Q = np.asarray(Q, dtype=np.int64).reshape(-1, self.spec.coordinate_arity)
        out = np.zeros(len(Q), dtype=np.float64)
        if len(Q) == 0 or len(self.probs) == 0:
            return out
        if self._index[0] == "key":
            _, lo, strides, keys = self._index
            if self._hi is None:
                self._hi = self.coords.max(axis=0)
            inside = np.all((Q >= lo) & (Q <= self._hi), axis=1)
            if not inside.any():
                return out
            qk = _encode(Q[inside], lo, strides)
            pos = np.searchsorted(keys, qk)
            pos_c = np.minimum(pos, len(keys) - 1)
            hit = keys[pos_c] == qk
            vals = np.where(hit, self.probs[pos_c], 0.0)
            out[inside] = vals
            return out
        idx = self._index[1]
        for r, q in enumerate(Q.tolist()):
            i = idx.get(tuple(q))
            if i is not None:
                out[r] = self.probs[i]
        return out

    def symmetry_error(self) -> float:
        if len(self.probs) == 0:
            return 0.0
        inv = self.spec.law.inverse_rows(self.coords)
        return float(np.max(np.abs(self.lookup_rows(inv) - self.probs)))


def delta_table(spec: GroupSpec, mode: str = "float") -> ProbabilityTable:
    e = spec.identity()
    if mode == "rational":
        return ProbabilityTable(
            spec, 0, [e], [1.0], lost_mass=Fraction(0), exact={e: Fraction(1)}
        )
    return ProbabilityTable(spec, 0, [e], [1.0])


def convolve(
    table: ProbabilityTable,
    m: StepMeasure,
    relative_floor: float = DEFAULT_RELATIVE_FLOOR,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> ProbabilityTable:
    """new(x) = sum_g old(x g^-1) m(g), i.e. one more step of the walk."""
    spec = table.spec
    if m.group_id != spec.id:
        raise DomainError(f"step measure of {m.group_id} cannot act on a table of {spec.id}")
    if table.exact is not None:
        return _convolve_exact(table, m)
    law = spec.law
    X = np.vstack([law.multiply_rows(table.coords, g) for g in m.elements])
    P = np.concatenate([table.probs * float(p) for p in m.probabilities])
    lo, span, size = _box(X)
    if size < KEY_LIMIT:
        strides = _strides(span)
        keys = _encode(X, lo, strides)
        uniq, first, inv = np.unique(keys, return_index=True, return_inverse=True)
        probs = np.bincount(inv.ravel(), weights=P, minlength=len(uniq))
        coords = X[first]
        index_keys = uniq
    else:
        coords, inv = np.unique(X, axis=0, return_inverse=True)
        probs = np.bincount(inv.ravel(), weights=P, minlength=len(coords))
        index_keys = None
    lost = float(table.lost_mass)
    if relative_floor > 0 and len(probs):
        floor = relative_floor * probs.max()
        keep = probs >= floor
        lost += float(probs[~keep].sum())
        coords, probs = coords[keep], probs[keep]
        if index_keys is not None:
            index_keys = index_keys[keep]
    if len(probs) > max_entries:
        raise BudgetExceededError(
            f"p^({table.step_count + 1}) on {spec.id} has {len(probs)} entries, over "
            f"the budget of {max_entries}; use the rejection or projected sampler"
        )
    index = ("key", lo, strides, index_keys) if index_keys is not None else None
    return ProbabilityTable(
        spec,
        table.step_count + 1,
        coords,
        probs,
        truncation_floor=relative_floor,
        lost_mass=lost,
        _index=index,
    )


def _convolve_exact(table: ProbabilityTable, m: StepMeasure) -> ProbabilityTable:
    mul = table.spec.law.multiply
    new: Dict[Tuple[int, ...], Fraction] = {}
    for x, px in table.exact.items():
        for g, pg in zip(m.elements, m.probabilities):
            y = mul(x, g)
            new[y] = new.get(y, Fraction(0)) + px * pg
    keys = sorted(new)
    return ProbabilityTable(
        table.spec,
        table.step_count + 1,
        keys,
        [float(new[k]) for k in keys],
        lost_mass=Fraction(0),
        exact=new,
    )


class TableSequence(Sequence):
    """p^(0), ..., p^(n) as a lazily indexable sequence.

    All tables are kept while their total size stays under ``store_budget``;
    past that only every ceil(sqrt(n))-th table is kept and the blocks in
    between are recomputed on demand (one block cached at a time).
    """

    def __init__(
        self,
        spec: GroupSpec,
        n: int,
        mode: str = "float",
        relative_floor: float = DEFAULT_RELATIVE_FLOOR,
        max_entries: int = DEFAULT_MAX_ENTRIES,
        store_budget: int = DEFAULT_STORE_BUDGET,
    ):
        self.spec = spec
        self.n = n
        self.mode = mode
        self.relative_floor = 0.0 if mode == "rational" else relative_floor
        self.max_entries = max_entries
        self.measure = step_measure(spec)
        self.block = max(1, ceil(isqrt(max(n, 1)) + 0.5))
        self._stored: Dict[int, ProbabilityTable] = {}
        self._cached_block: Dict[int, ProbabilityTable] = {}
        self.checkpointed = False

        tab = delta_table(spec, mode)
        self._stored[0] = tab
        held = 1
        for t in range(1, n + 1):
            tab = self._step(tab)
            keep = t % self.block == 0
            if not self.checkpointed:
                held += tab.support_size
                if held > store_budget:
                    self.checkpointed = True
                    self._stored = {
                        s: v for s, v in self._stored.items() if s % self.block == 0
                    }
                    logger.info(
                        f"{spec.id}: tables up to n={n} exceed {store_budget} entries, "
                        f"keeping checkpoints every {self.block} steps"
                    )
                else:
                    keep = True
            if keep:
                self._stored[t] = tab
        self.last = tab
        if mode == "float":
            logger.info(
                f"{spec.id}: p^({n}) has {tab.support_size} entries, lost mass {float(tab.lost_mass):.3e}"
            )

    def _step(self, tab: ProbabilityTable) -> ProbabilityTable:
        return convolve(tab, self.measure, self.relative_floor, self.max_entries)

    def __len__(self):
        return self.n + 1

    def __getitem__(self, t):
        if isinstance(t, slice):
            return [self[i] for i in range(*t.indices(len(self)))]
        if t < 0:
            t += len(self)
        if not 0 <= t <= self.n:
            raise IndexError(f"table index {t} outside 0..{self.n}")
        if t in self._stored:
            return self._stored[t]
        if t not in self._cached_block:
            start = (t // self.block) * self.block
            tab = self._stored[start]
            block = {}
            for s in range(start + 1, min(start + self.block, self.n + 1)):
                tab = self._step(tab)
                block[s] = tab
            self._cached_block = block
        return self._cached_block[t]


def return_tables(
    spec: GroupSpec,
    n: int,
    mode: str = "float",
    relative_floor: float = DEFAULT_RELATIVE_FLOOR,
    max_entries: int = DEFAULT_MAX_ENTRIES,
    store_budget: int = DEFAULT_STORE_BUDGET,
) -> TableSequence:
    if isinstance(spec, str):
        spec = get_group(spec)
    return TableSequence(spec, n, mode, relative_floor, max_entries, store_budget)


def heat_kernel(
    spec: GroupSpec, n: int, relative_floor: float = DEFAULT_RELATIVE_FLOOR, mode: str = "float"
):
    """Yield p^(t) for t = 0..n without keeping earlier tables."""
    m = step_measure(spec)
    tab = delta_table(spec, mode)
    yield tab
    for _ in range(n):
        tab = convolve(tab, m, relative_floor)
        yield tab


def table_to_csv(table: ProbabilityTable, path, meta: Optional[Dict] = None):
    header = [f"c{i}" for i in range(table.spec.coordinate_arity)] + ["probability"]
    rows = (list(c) + [float(p)] for c, p in sorted(table.items()))
    return write_csv(path, header, rows, meta)
