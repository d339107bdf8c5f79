"""Loops sampled through the time-dependent bridge transition.

At step t from position x the next letter g is drawn with probability

    p(g) p^(n-t-1)((x g)^-1) / sum_h p(h) p^(n-t-1)((x h)^-1)

which is the walk conditioned to be back at e after n steps. Every sample
consumes exactly n uniforms from its own generator, so a batch is evaluated in
lockstep without the samples influencing each other.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from dehnlab.errors import BridgeStateError, DomainError, SamplerExhaustedError
from dehnlab.group.catalog import GroupSpec, abelianization
from dehnlab.walk.measure import step_measure
from dehnlab.walk.samplers import (
    DEFAULT_CHUNK,
    DEFAULT_MAX_ATTEMPTS,
    LoopSample,
    element_array,
    eval_letter_rows,
    letter_array,
    sample_loops_rejection,
)
from dehnlab.walk.table import TableSequence, return_tables

logger = logging.getLogger("walk_logger")


def _check_tables(spec: GroupSpec, n: int, tables) -> TableSequence:
    if tables is None:
        return return_tables(spec, max(n - 1, 0))
    if tables.spec.id != spec.id:
        raise DomainError(f"tables belong to {tables.spec.id}, not {spec.id}")
    if n > 0 and len(tables) < n:
        raise DomainError(f"bridge of length {n} needs tables up to t={n - 1}, got {len(tables) - 1}")
    return tables


def bridge_letter_rows(spec: GroupSpec, n: int, tables: TableSequence, U: np.ndarray) -> np.ndarray:
    """Letter indices (rows) of bridges driven by the uniforms ``U`` (one row per bridge)."""
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    B = U.shape[0]
    law = spec.law
    E = element_array(spec)
    m = step_measure(spec)
    pg = m.float_probabilities()
    X = law.identity_rows(B)
    idx = np.zeros((B, n), dtype=np.int64)
    for t in range(n):
        remaining = tables[n - t - 1]
        W = np.empty((B, len(E)))
        for k, g in enumerate(E):
            W[:, k] = pg[k] * remaining.lookup_rows(law.inverse_rows(law.multiply_rows(X, g)))
        Z = W.sum(axis=1)
        if np.any(Z <= 0):
            bad = int(np.flatnonzero(Z <= 0)[0])
            raise BridgeStateError(
                f"bridge normalizer vanished at step {t} of {n} from {tuple(X[bad])} on {spec.id}"
            )
        cdf = np.cumsum(W / Z[:, None], axis=1)
        choice = np.minimum((cdf < U[:, t : t + 1]).sum(axis=1), len(E) - 1)
        idx[:, t] = choice
        X = law.multiply_rows(X, E[choice])
    return idx


def sample_loops_bridge(
    spec: GroupSpec,
    n: int,
    rngs: Sequence[np.random.Generator],
    tables: Optional[TableSequence] = None,
    seed: Optional[int] = None,
    start_index: int = 0,
) -> List[LoopSample]:
    tables = _check_tables(spec, n, tables)
    U = np.array([rng.random(n) for rng in rngs]).reshape(len(rngs), n)
    letters = letter_array(spec)
    idx = bridge_letter_rows(spec, n, tables, U)
    return [
        LoopSample(tuple(int(x) for x in letters[row]), spec.id, "bridge", seed, start_index + i, 1)
        for i, row in enumerate(idx)
    ]


def sample_loop_bridge(
    spec: GroupSpec,
    n: int,
    rng: np.random.Generator,
    tables: Optional[TableSequence] = None,
    seed: Optional[int] = None,
    index: Optional[int] = None,
) -> LoopSample:
    s = sample_loops_bridge(spec, n, [rng], tables, seed, index or 0)[0]
    return LoopSample(s.word, s.group_id, s.method, seed, index, 1)


def sample_loop_projected(
    spec: GroupSpec,
    n: int,
    rng: np.random.Generator,
    tables: Optional[TableSequence] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    chunk: int = DEFAULT_CHUNK,
    seed: Optional[int] = None,
    index: Optional[int] = None,
) -> LoopSample:
    """Bridge on the abelianization, accepted when the word is a loop in ``spec``.

    All words of length n are equally likely under the walk and loops of the
    group are loops of Z^d, so the accepted words are uniform over the loops of
    the group.
    """
    ab = abelianization(spec)
    tables = _check_tables(ab, n, tables)
    letters = letter_array(spec)
    attempts = 0
    while attempts < max_attempts:
        size = min(chunk, max_attempts - attempts)
        idx = bridge_letter_rows(ab, n, tables, rng.random((size, n)))
        X = eval_letter_rows(spec, idx)
        hits = np.flatnonzero(~X.any(axis=1))
        if len(hits):
            first = int(hits[0])
            attempts += first + 1
            word = tuple(int(x) for x in letters[idx[first]])
            return LoopSample(word, spec.id, "projected", seed, index, attempts)
        attempts += size
    logger.warning(f"projected sampler on {spec.id} found no loop of length {n} in {attempts} attempts")
    raise SamplerExhaustedError(
        f"no loop of length {n} on {spec.id} after {attempts} projected attempts",
        attempts=attempts,
    )


def sample_loops_projected(
    spec: GroupSpec,
    n: int,
    rngs: Sequence[np.random.Generator],
    tables: Optional[TableSequence] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    seed: Optional[int] = None,
    start_index: int = 0,
) -> List[LoopSample]:
    tables = _check_tables(abelianization(spec), n, tables)
    return [
        sample_loop_projected(spec, n, rng, tables, max_attempts, seed=seed, index=start_index + i)
        for i, rng in enumerate(rngs)
    ]


def resolve_method(spec: GroupSpec, method: str) -> str:
    if method == "auto":
        return "bridge" if spec.family == "FreeAbelian" else "projected"
    if method not in ("rejection", "bridge", "projected"):
        raise KeyError(f"sampler {method} not available in options ['auto', 'rejection', 'bridge', 'projected']")
    return method


def tables_for(spec: GroupSpec, n: int, method: str, **table_kwargs) -> Optional[TableSequence]:
    method = resolve_method(spec, method)
    if method == "bridge":
        return return_tables(spec, max(n - 1, 0), **table_kwargs)
    if method == "projected":
        return return_tables(abelianization(spec), max(n - 1, 0), **table_kwargs)
    return None


def sample_loops(
    spec: GroupSpec,
    n: int,
    rngs: Sequence[np.random.Generator],
    method: str = "auto",
    tables: Optional[TableSequence] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    seed: Optional[int] = None,
    start_index: int = 0,
) -> List[LoopSample]:
    method = resolve_method(spec, method)
    if method == "rejection":
        return sample_loops_rejection(spec, n, rngs, max_attempts, seed, start_index)
    if method == "bridge":
        return sample_loops_bridge(spec, n, rngs, tables, seed, start_index)
    return sample_loops_projected(spec, n, rngs, tables, max_attempts, seed, start_index)


def hat_p(spec: GroupSpec, x, y, t: int, n: int, tables: Optional[TableSequence] = None):
    """Probability that the loop bridge moves from x to y at step t."""
    if not 0 <= t < n:
        raise DomainError(f"step {t} is outside 0..{n - 1}")
    tables = tables if tables is not None else return_tables(spec, n)
    if len(tables) < n:
        raise DomainError(f"hat_p at n={n} needs tables up to t={n - 1}")
    x, y = tuple(x), tuple(y)
    if tables[t].get(x) == 0:
        raise DomainError(f"{x} is not reachable from e in {t} steps on {spec.id}")
    m = step_measure(spec)
    remaining = tables[n - t - 1]
    denom = sum(
        (p * remaining.get(spec.inverse(spec.multiply(x, g))) for g, p in m.support),
        0,
    )
    if denom == 0:
        raise DomainError(f"{x} cannot return to e in {n - t} steps on {spec.id}")
    step = spec.multiply(spec.inverse(x), y)
    return m.probability_of(step) * remaining.get(spec.inverse(y)) / denom
