"""Loop samples in reproducible blocks.

Sample i of the curve point n always comes from substream (seed, n, i), so a
block (n, start, count) gives the same loops whichever worker evaluates it
and however the samples are split into blocks.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from dehnlab.errors import (
    CapExceededError,
    DomainError,
    PartialResultsError,
    SamplerExhaustedError,
)
from dehnlab.estimate.curve import Curve, CurvePoint, RunningMoments
from dehnlab.group.catalog import get_group
from dehnlab.walk.bridge import resolve_method, sample_loops, tables_for
from dehnlab.walk.rng import substreams
from dehnlab.walk.samplers import LoopSample

DEFAULT_BLOCK_SIZE = 64

logger = logging.getLogger("estimate_logger")

# (group id, n, seed, start, count, sampler)
Block = Tuple[str, int, int, int, int, str]


@lru_cache(maxsize=4)
def cached_tables(group_id: str, n: int, method: str):
    return tables_for(get_group(group_id), n, method)


def draw_block(group_id: str, n: int, seed: int, start: int, count: int, sampler: str) -> List[LoopSample]:
    spec = get_group(group_id)
    method = resolve_method(spec, sampler)
    rngs = substreams(seed, start, count, scale=n)
    return sample_loops(
        spec, n, rngs, method, cached_tables(group_id, n, method), seed=seed, start_index=start
    )


def split_blocks(
    group_id: str, n_list: Iterable[int], samples: int, seed: int, sampler: str,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> List[Block]:
    if samples < 1:
        raise DomainError(f"at least one sample per point is needed, got {samples}")
    out = []
    for n in n_list:
        for start in range(0, samples, block_size):
            out.append((group_id, int(n), seed, start, min(block_size, samples - start), sampler))
    return out


def evaluate_block(
    block: Block, statistic: Callable[[LoopSample], Dict[object, float]]
) -> Tuple[int, Dict[object, RunningMoments], int, Optional[str]]:
    """Apply ``statistic`` to every loop of the block.

    A statistic returns named values for one loop, or raises CapExceededError
    (counted as a failed sample). An exhausted sampler ends the block early.
    """
    group_id, n, seed, start, count, sampler = block
    stats: Dict[object, RunningMoments] = {}
    failures = 0
    try:
        loops = draw_block(group_id, n, seed, start, count, sampler)
    except SamplerExhaustedError as e:
        logger.warning(f"{group_id} n={n} block at {start}: {e}")
        return n, stats, count, str(e)
    for loop in loops:
        try:
            values = statistic(loop)
        except CapExceededError as e:
            logger.debug(f"{group_id} n={n} sample {loop.index}: {e}")
            failures += 1
            continue
        if values is None:
            failures += 1
            continue
        for k, v in values.items():
            stats.setdefault(k, RunningMoments()).push(v)
    return n, stats, failures, None


def merge_blocks(results: Iterable) -> Tuple[Dict[int, Dict[object, RunningMoments]], Dict[int, int], List[str]]:
    merged: Dict[int, Dict[object, RunningMoments]] = {}
    failures: Dict[int, int] = {}
    errors: List[str] = []
    for n, stats, failed, err in results:
        per_n = merged.setdefault(n, {})
        for k, m in stats.items():
            per_n.setdefault(k, RunningMoments()).merge(m)
        failures[n] = failures.get(n, 0) + failed
        if err:
            errors.append(f"n={n}: {err}")
    return merged, failures, errors


def build_curve(
    label: str,
    scales: Sequence[int],
    moments: Dict[int, RunningMoments],
    failures: Dict[int, int],
    errors: Sequence[str] = (),
    meta: Optional[dict] = None,
) -> Curve:
    """Curve over ``scales``; raises PartialResultsError if some scale has no samples."""
    points, missing = [], []
    for s in sorted(scales):
        m = moments.get(s)
        if m is None or m.count == 0:
            missing.append(s)
            continue
        points.append(CurvePoint.from_moments(s, m))
    curve = Curve(points, label, {k: v for k, v in failures.items() if v}, dict(meta or {}))
    if errors:
        curve.meta["errors"] = list(errors)
    if missing:
        raise PartialResultsError(
            f"{label}: no successful samples at scales {missing}", partial=curve
        )
    return curve
