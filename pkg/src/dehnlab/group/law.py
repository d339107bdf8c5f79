"""Normal-form multiplication for the catalog groups.

Every law works on integer coordinate tuples (scalar path, exact Python ints
checked against the signed 64-bit range) and on int64 numpy row arrays
(vectorized path used by convolution and the samplers). The vectorized path
checks magnitudes before multiplying so numpy never wraps around silently.
"""
from itertools import combinations
from typing import List, Tuple

import numpy as np

from dehnlab.errors import CoordinateOverflowError

Coords = Tuple[int, ...]

INT64_MAX = 2 ** 63 - 1


def _checked(values) -> Coords:
    out = tuple(int(v) for v in values)
    for v in out:
        if v > INT64_MAX or v < -INT64_MAX:
            raise CoordinateOverflowError(
                f"coordinate {v} does not fit in a signed 64-bit integer"
            )
    return out


def _row_bound(arr) -> int:
    arr = np.asarray(arr)
    if arr.size == 0:
        return 0
    return int(np.abs(arr).max())


def _as_rows(Y, arity: int) -> np.ndarray:
    Y = np.asarray(Y, dtype=np.int64)
    if Y.ndim == 1 and Y.shape[0] != arity:
        raise ValueError(f"element has {Y.shape[0]} coordinates, expected {arity}")
    return Y


class GroupLaw:
    arity = 0

    def identity(self) -> Coords:
        return (0,) * self.arity

    def multiply(self, x: Coords, y: Coords) -> Coords:
        raise NotImplementedError

    def inverse(self, x: Coords) -> Coords:
        raise NotImplementedError

    def generator(self, index: int) -> Coords:
        raise NotImplementedError

    def multiply_rows(self, X, Y) -> np.ndarray:
        raise NotImplementedError

    def inverse_rows(self, X) -> np.ndarray:
        raise NotImplementedError

    def identity_rows(self, count: int) -> np.ndarray:
        return np.zeros((count, self.arity), dtype=np.int64)


class FreeAbelianLaw(GroupLaw):
    def __init__(self, rank: int):
        self.rank = rank
        self.arity = rank

    def multiply(self, x, y):
        return _checked(a + b for a, b in zip(x, y))

    def inverse(self, x):
        return _checked(-a for a in x)

    def generator(self, index):
        g = [0] * self.rank
        g[index - 1] = 1
        return tuple(g)

    def multiply_rows(self, X, Y):
        X = np.asarray(X, dtype=np.int64)
        Y = _as_rows(Y, self.arity)
        if _row_bound(X) + _row_bound(Y) > INT64_MAX:
            raise CoordinateOverflowError("free abelian coordinates overflow int64")
        return X + Y

    def inverse_rows(self, X):
        return -np.asarray(X, dtype=np.int64)


class Class2Law(GroupLaw):
    """Free nilpotent class 2 on k generators: (v, M) with M indexed by i<j.

    (v, M)(v', M') = (v + v', M + M' + upper(v (x) v')).
    With k = 2 this is the Heisenberg law (x, y, z)(x', y', z') =
    (x + x', y + y', z + z' + x y').
    """

    def __init__(self, rank: int):
        self.rank = rank
        self.pairs: List[Tuple[int, int]] = list(combinations(range(rank), 2))
        self.arity = rank + len(self.pairs)

    def multiply(self, x, y):
        k = self.rank
        out = [x[i] + y[i] for i in range(k)]
        for p, (i, j) in enumerate(self.pairs):
            out.append(x[k + p] + y[k + p] + x[i] * y[j])
        return _checked(out)

    def inverse(self, x):
        k = self.rank
        out = [-x[i] for i in range(k)]
        for p, (i, j) in enumerate(self.pairs):
            out.append(-x[k + p] + x[i] * x[j])
        return _checked(out)

    def generator(self, index):
        g = [0] * self.arity
        g[index - 1] = 1
        return tuple(g)

    def _guard(self, bx: int, by: int):
        if bx * by + 2 * max(bx, by) > INT64_MAX:
            raise CoordinateOverflowError("class-2 coordinates overflow int64")

    def multiply_rows(self, X, Y):
        X = np.asarray(X, dtype=np.int64)
        Y = _as_rows(Y, self.arity)
        self._guard(_row_bound(X), _row_bound(Y))
        k = self.rank
        out = X + Y
        for p, (i, j) in enumerate(self.pairs):
            out[:, k + p] += X[:, i] * Y[..., j]
        return out

    def inverse_rows(self, X):
        X = np.asarray(X, dtype=np.int64)
        b = _row_bound(X)
        self._guard(b, b)
        k = self.rank
        out = -X
        for p, (i, j) in enumerate(self.pairs):
            out[:, k + p] += X[:, i] * X[:, j]
        return out


class FiliformLaw(GroupLaw):
    """Z^3 x| Z with the unipotent Jordan action, coordinates (v1, v2, v3, m).

    (v; m)(v'; m') = (v + phi^m v'; m + m') where
    phi^m = [[1, m, m(m-1)/2], [0, 1, m], [0, 0, 1]].
    Generators: t = (0, 0, 0; 1) and s = (0, 0, 1; 0); v1 is the central,
    cubically distorted coordinate.
    """

    arity = 4

    def multiply(self, x, y):
        v1, v2, v3, m = x
        a, b, c, n = y
        return _checked(
            (
                v1 + a + m * b + (m * (m - 1) // 2) * c,
                v2 + b + m * c,
                v3 + c,
                m + n,
            )
        )

    def inverse(self, x):
        v1, v2, v3, m = x
        return _checked(
            (-v1 + m * v2 - (m * (m + 1) // 2) * v3, -v2 + m * v3, -v3, -m)
        )

    def generator(self, index):
        if index == 1:
            return (0, 0, 0, 1)
        if index == 2:
            return (0, 0, 1, 0)
        raise IndexError(f"filiform group has 2 generators, not {index}")

    def _guard(self, bound: int):
        if 4 * bound ** 3 > INT64_MAX:
            raise CoordinateOverflowError("filiform coordinates overflow int64")

    def multiply_rows(self, X, Y):
        X = np.asarray(X, dtype=np.int64)
        Y = _as_rows(Y, self.arity)
        self._guard(max(_row_bound(X), _row_bound(Y)))
        m = X[:, 3]
        a, b, c, n = Y[..., 0], Y[..., 1], Y[..., 2], Y[..., 3]
        out = np.empty_like(X)
        out[:, 0] = X[:, 0] + a + m * b + ((m * (m - 1)) // 2) * c
        out[:, 1] = X[:, 1] + b + m * c
        out[:, 2] = X[:, 2] + c
        out[:, 3] = m + n
        return out

    def inverse_rows(self, X):
        X = np.asarray(X, dtype=np.int64)
        self._guard(_row_bound(X))
        m = X[:, 3]
        out = np.empty_like(X)
        out[:, 0] = -X[:, 0] + m * X[:, 1] - ((m * (m + 1)) // 2) * X[:, 2]
        out[:, 1] = -X[:, 1] + m * X[:, 2]
        out[:, 2] = -X[:, 2]
        out[:, 3] = -m
        return out


def filiform_to_heisenberg(x: Coords) -> Coords:
    # (v1, v2, v3; m) -> (m, v3, v2) kills exactly the central v1
    v1, v2, v3, m = x
    return (m, v3, v2)


def heisenberg_to_z2(x: Coords) -> Coords:
    return (x[0], x[1])
