import logging
from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence

from dehnlab.errors import DomainError
from dehnlab.estimate.curve import Curve, CurvePoint
from dehnlab.estimate.fit import ExponentFit, exponent_fit
from dehnlab.estimate.sampling import (
    DEFAULT_BLOCK_SIZE,
    build_curve,
    evaluate_block,
    merge_blocks,
    split_blocks,
)
from dehnlab.fill.central import central_coordinates, central_extension
from dehnlab.group.catalog import GroupSpec, get_group, trace
from dehnlab.group.metric import DEFAULT_RADIUS_CAP, norm
from dehnlab.walk.samplers import LoopSample

logger = logging.getLogger("estimate_logger")


def _distance_statistic(loop: LoopSample, t_list: Sequence[int], m_list: Sequence[int], radius_cap: int):
    spec = get_group(loop.group_id)
    tr = trace(spec, loop.word)
    out = {}
    for t in t_list:
        d = norm(spec, tr[t], radius_cap)
        for m in m_list:
            out[(t, m)] = float(d) ** m
    return out


def distance_moments(
    spec: GroupSpec,
    n: int,
    t_list: Sequence[int],
    m_list: Sequence[int],
    samples: int,
    seed: int = 0,
    sampler: str = "auto",
    radius_cap: int = DEFAULT_RADIUS_CAP,
    block_size: int = DEFAULT_BLOCK_SIZE,
    map_fn=map,
):
    bad = [t for t in t_list if not 0 <= t <= n]
    if bad:
        raise DomainError(f"times {bad} are outside 0..{n}")
    blocks = split_blocks(spec.id, [n], samples, seed, sampler, block_size)
    stat = partial(_distance_statistic, t_list=tuple(t_list), m_list=tuple(m_list), radius_cap=radius_cap)
    merged, failures, errors = merge_blocks(map_fn(partial(evaluate_block, statistic=stat), blocks))
    return merged.get(n, {}), failures.get(n, 0), errors


def moment_curve(
    spec: GroupSpec,
    n: int,
    t_list: Sequence[int],
    m: int,
    samples: int,
    seed: int = 0,
    sampler: str = "auto",
    radius_cap: int = DEFAULT_RADIUS_CAP,
    block_size: int = DEFAULT_BLOCK_SIZE,
    map_fn=map,
) -> Curve:
    """E[d(e, w(t))^m] over loops of length n, as a curve in t."""
    stats, failed, errors = distance_moments(
        spec, n, t_list, [m], samples, seed, sampler, radius_cap, block_size, map_fn
    )
    moments = {t: stats.get((t, m)) for t in t_list if (t, m) in stats}
    meta = {"group": spec.id, "n": n, "m": m, "sampler": sampler, "seed": seed, "samples": samples}
    # a failed loop fails at every time
    return build_curve(
        f"{spec.id} E d(e,w(t))^{m}", t_list, moments, {t: failed for t in t_list}, errors, meta
    )


@dataclass(frozen=True)
class MomentRatio:
    first: ExponentFit
    second: ExponentFit
    # walk-time slopes of the same moments when first and second are on bridge time
    walk_first: Optional[ExponentFit] = None
    walk_second: Optional[ExponentFit] = None

    @property
    def ratio(self) -> float:
        return self.second.slope / self.first.slope if self.first.slope else float("nan")

    def agrees(self, tolerance: float) -> bool:
        combined = tolerance + 2 * self.first.slope_stderr + self.second.slope_stderr
        return abs(self.second.slope - 2 * self.first.slope) <= combined


def bridge_time(t: int, n: int) -> float:
    """Variance scale of a loop of length n at time t, in units of one free step."""
    return t * (n - t) / n


def on_bridge_time(curve: Curve, n: int) -> Curve:
    """The same points against t(n - t)/n instead of t (increasing for t <= n/2)."""
    if any(p.scale > n / 2 for p in curve.points):
        raise DomainError(f"bridge time is only increasing up to t = {n // 2}")
    return Curve(
        [CurvePoint(bridge_time(p.scale, n), p.value, p.stderr, p.sample_count) for p in curve.points],
        curve.label,
        dict(curve.failures),
        dict(curve.meta, time="bridge"),
    )


def moment_ratio_check(
    spec: GroupSpec,
    n: int,
    t_list: Sequence[int],
    samples: int,
    seed: int = 0,
    sampler: str = "auto",
    radius_cap: int = DEFAULT_RADIUS_CAP,
    map_fn=map,
    time: str = "walk",
) -> MomentRatio:
    """Slopes of the first and second distance moments from the same loops.

    With time="bridge" the moments are fitted against t(n - t)/n, the scale on
    which a loop spreads, so the slopes are m/2 over the whole of 0 < t <= n/2.
    The walk-time slopes of the same moments are kept alongside.
    """
    if time not in ("walk", "bridge"):
        raise ValueError(f"time {time} not available in options ['walk', 'bridge']")
    stats, failed, errors = distance_moments(
        spec, n, t_list, [1, 2], samples, seed, sampler, radius_cap, map_fn=map_fn
    )
    fits, walk = [], []
    for m in (1, 2):
        moments = {t: stats.get((t, m)) for t in t_list if (t, m) in stats}
        curve = build_curve(f"{spec.id} m={m}", t_list, moments, {t: failed for t in t_list}, errors)
        walk.append(exponent_fit(curve))
        if time == "bridge":
            fits.append(exponent_fit(on_bridge_time(curve, n)))
    if time == "walk":
        return MomentRatio(*walk)
    return MomentRatio(*fits, *walk)


def _central_statistic(loop: LoopSample):
    ext = central_extension(get_group(loop.group_id))
    return {"abs": sum(abs(c) for c in central_coordinates(ext, loop.word))}


def central_moment_curve(
    spec: GroupSpec,
    n_list: Sequence[int],
    samples: int,
    seed: int = 0,
    sampler: str = "auto",
    block_size: int = DEFAULT_BLOCK_SIZE,
    map_fn=map,
) -> Curve:
    """E|l| (L1 norm of the central coordinates) over loops of each length."""
    central_extension(spec)
    blocks = split_blocks(spec.id, n_list, samples, seed, sampler, block_size)
    merged, failures, errors = merge_blocks(
        map_fn(partial(evaluate_block, statistic=_central_statistic), blocks)
    )
    moments = {n: s["abs"] for n, s in merged.items() if "abs" in s}
    meta = {"group": spec.id, "sampler": sampler, "seed": seed, "samples": samples}
    return build_curve(f"{spec.id} E|l|", n_list, moments, failures, errors, meta)
