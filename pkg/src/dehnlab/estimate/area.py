import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Dict, List, Sequence

from dehnlab.estimate.curve import Curve
from dehnlab.estimate.sampling import (
    DEFAULT_BLOCK_SIZE,
    build_curve,
    evaluate_block,
    merge_blocks,
    split_blocks,
)
from dehnlab.fill.central import centralized_area
from dehnlab.fill.dyadic import dyadic_area
from dehnlab.fill.oracle import exact_area_search, winding_area
from dehnlab.group.catalog import GroupSpec, get_group
from dehnlab.group.metric import DEFAULT_RADIUS_CAP
from dehnlab.group.words import LazyWord
from dehnlab.walk.samplers import LoopSample

logger = logging.getLogger("estimate_logger")


def _dyadic(spec, w, radius_cap=DEFAULT_RADIUS_CAP, **kw):
    return dyadic_area(spec, w, radius_cap)


def _central(spec, w, **kw):
    return centralized_area(spec, w)


def _exact(spec, w, budget=8, **kw):
    return exact_area_search(spec, w, budget)


def _winding(spec, w, **kw):
    return winding_area(w)


def return_available_area_functions() -> Dict[str, Callable]:
    # central is a lower proxy, dyadic an upper proxy, exact and winding are oracles
    return {"dyadic": _dyadic, "central": _central, "exact": _exact, "winding": _winding}


def get_area_function(name: str) -> Callable:
    options = return_available_area_functions()
    try:
        return options[name]
    except KeyError:
        raise KeyError(f"area function {name} not available in options {list(options.keys())}")


def _area_statistic(loop: LoopSample, areas: Sequence[str], radius_cap: int, budget: int):
    spec = get_group(loop.group_id)
    out = {}
    for name in areas:
        a = get_area_function(name)(spec, loop.word, radius_cap=radius_cap, budget=budget)
        if a is None:
            return None
        out[name] = a
    return out


def area_moments(
    spec: GroupSpec,
    n_list: Sequence[int],
    samples_per_n: int,
    seed: int = 0,
    sampler: str = "auto",
    areas: Sequence[str] = ("dyadic",),
    radius_cap: int = DEFAULT_RADIUS_CAP,
    budget: int = 8,
    block_size: int = DEFAULT_BLOCK_SIZE,
    map_fn=map,
):
    for name in areas:
        get_area_function(name)
    blocks = split_blocks(spec.id, n_list, samples_per_n, seed, sampler, block_size)
    stat = partial(_area_statistic, areas=tuple(areas), radius_cap=radius_cap, budget=budget)
    return merge_blocks(map_fn(partial(evaluate_block, statistic=stat), blocks))


def avg_area_curve(
    spec: GroupSpec,
    n_list: Sequence[int],
    samples_per_n: int,
    seed: int = 0,
    sampler: str = "auto",
    area: str = "dyadic",
    radius_cap: int = DEFAULT_RADIUS_CAP,
    budget: int = 8,
    block_size: int = DEFAULT_BLOCK_SIZE,
    map_fn=map,
) -> Curve:
    """Mean filling area of loops of each length under ``area`` (dyadic, central, exact, winding)."""
    merged, failures, errors = area_moments(
        spec, n_list, samples_per_n, seed, sampler, (area,), radius_cap, budget, block_size, map_fn
    )
    moments = {n: stats.get(area) for n, stats in merged.items() if area in stats}
    meta = {"group": spec.id, "area": area, "sampler": sampler, "seed": seed, "samples_per_n": samples_per_n}
    return build_curve(f"{spec.id} average {area} area", n_list, moments, failures, errors, meta)


@dataclass
class AreaBracket:
    lower: Curve
    upper: Curve

    def rows(self) -> List[tuple]:
        return [
            (lo.scale, lo.value, self.upper.at(lo.scale).value)
            for lo in self.lower.points
            if self.upper.at(lo.scale) is not None
        ]


def delta_avg_bracket(
    spec: GroupSpec,
    n_list: Sequence[int],
    samples_per_n: int,
    seed: int = 0,
    sampler: str = "auto",
    radius_cap: int = DEFAULT_RADIUS_CAP,
    block_size: int = DEFAULT_BLOCK_SIZE,
    map_fn=map,
) -> AreaBracket:
    """[centralized area, dyadic area] averaged over the same loops."""
    merged, failures, errors = area_moments(
        spec, n_list, samples_per_n, seed, sampler, ("central", "dyadic"), radius_cap, 8, block_size, map_fn
    )
    meta = {"group": spec.id, "sampler": sampler, "seed": seed, "samples_per_n": samples_per_n}
    curves = {}
    for name in ("central", "dyadic"):
        moments = {n: s[name] for n, s in merged.items() if name in s}
        curves[name] = build_curve(
            f"{spec.id} average {name} area", n_list, moments, failures, errors, dict(meta, area=name)
        )
    return AreaBracket(curves["central"], curves["dyadic"])


def exact_avg_area(spec: GroupSpec, loops: Sequence[LazyWord], area: str = "winding", budget: int = 8):
    """Exact mean area over an explicit list of loops; None if some loop is past the budget."""
    fn = get_area_function(area)
    total = 0
    for w in loops:
        a = fn(spec, w, budget=budget)
        if a is None:
            return None
        total += a
    return Fraction(total, len(loops)) if loops else Fraction(0)
