"""Empirical check of two-sided Gaussian heat-kernel bounds.

Upper bound:  p^(n)(x) <= C n^(-D/2) exp(-d(e,x)^2 / (C' n))
Lower bound:  p^(n)(x) >= C^-1 n^(-D/2) exp(-C d(e,x)^2 / n)   on B(e, n/C'')

Distances come from the word metric inside the BFS radius cap. Beyond the cap
the upper bound is checked against the length of an explicit word for the
point, which is at least its distance, so a constant that holds with it holds
with the true distance. Points with neither are unresolved and reported as
violations. The lower bound only looks inside the cap.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from dehnlab.group.catalog import GroupSpec
from dehnlab.group.metric import (
    DEFAULT_RADIUS_CAP,
    ball_census,
    distance_upper_bounds,
    get_ball_cache,
)
from dehnlab.walk.table import DEFAULT_RELATIVE_FLOOR, ProbabilityTable, heat_kernel

DEFAULT_C_DOUBLE_PRIME = 8.0
C_PRIME_GRID = np.geomspace(0.25, 64.0, 49)
C_LOWER_GRID = np.geomspace(1.0, 4096.0, 49)

logger = logging.getLogger("walk_logger")


@dataclass
class LowerBound:
    c_double_prime: float
    radius: int
    points: int
    missing: int
    constant: Optional[float]
    violations: int


@dataclass
class HeatKernelPoint:
    n: int
    return_probability: float
    support_size: int
    resolved: int
    unresolved: int
    bounded: int
    C: float
    C_prime: float
    lower: Dict[float, LowerBound] = field(default_factory=dict)
    lost_mass: float = 0.0
    symmetry_error: float = 0.0


@dataclass
class HeatKernelReport:
    group_id: str
    growth_degree: int
    points: List[HeatKernelPoint]
    C: float
    C_prime: float
    slope: float
    c_double_prime: float
    violations: List[str] = field(default_factory=list)

    def summary(self) -> Dict:
        return {
            "group": self.group_id,
            "D": self.growth_degree,
            "C": self.C,
            "C_prime": self.C_prime,
            "slope": self.slope,
            "c_double_prime": self.c_double_prime,
            "violations": list(self.violations),
            "points": [
                {
                    "n": p.n,
                    "p_e": p.return_probability,
                    "C": p.C,
                    "C_prime": p.C_prime,
                    "bounded": p.bounded,
                    "unresolved": p.unresolved,
                    "lower": {str(k): v.__dict__ for k, v in p.lower.items()},
                }
                for p in self.points
            ],
        }


def _distances(spec: GroupSpec, coords: np.ndarray, radius_cap: int):
    """Exact word distances (-1 where unknown), certified upper bounds and the resolved cap.

    Rows inside the BFS ball get their exact distance in both arrays. Rows
    beyond it get the length of an explicit word for the element as the upper
    bound, or -1 when the group has no word construction.
    """
    if spec.family == "FreeAbelian":
        # exact, no cap needed
        l1 = np.abs(coords).sum(axis=1)
        return l1, l1, int(l1.max()) if len(l1) else 0
    # the abelianized coordinates give a lower bound on the distance
    if spec.family == "Filiform4":
        l1 = np.abs(coords[:, 2]) + np.abs(coords[:, 3])
    else:
        l1 = np.abs(coords[:, : spec.generator_count]).sum(axis=1)
    cache = get_ball_cache(spec.id)
    cap = min(radius_cap, cache.expand_to(radius_cap, strict=False))
    exact = np.full(len(coords), -1, dtype=np.int64)
    for i in np.flatnonzero(l1 <= cap):
        d = cache.lookup(tuple(int(c) for c in coords[i]))
        if d is not None and d <= cap:
            exact[i] = d
    upper = exact.copy()
    beyond = exact < 0
    if beyond.any():
        bounds = distance_upper_bounds(spec, coords[beyond])
        if bounds is not None:
            upper[beyond] = bounds
    return exact, upper, cap


def _ball_size(spec: GroupSpec, radius: int) -> int:
    return sum(ball_census(spec, radius))


def _upper_constants(p, d, n: int, D: int) -> np.ndarray:
    # C(C') = max_x p(x) n^(D/2) exp(d^2 / (C' n)) for every C' on the grid
    if len(p) == 0:
        return np.full(len(C_PRIME_GRID), np.inf)
    scaled = np.log(p) + 0.5 * D * np.log(n)
    quad = (d.astype(np.float64) ** 2) / n
    with np.errstate(over="ignore"):
        return np.exp(np.max(scaled[None, :] + quad[None, :] / C_PRIME_GRID[:, None], axis=1))


def _lower_bound(spec, p, d, n, D, cdp, radius_cap) -> LowerBound:
    radius = int(n // cdp)
    radius = min(radius, radius_cap)
    inside = (d >= 0) & (d <= radius)
    ball = _ball_size(spec, radius)
    pts = int(inside.sum())
    missing = max(ball - pts, 0)
    if pts == 0:
        return LowerBound(cdp, radius, 0, missing, None, missing)
    scaled = np.log(p[inside]) + 0.5 * D * np.log(n)
    quad = (d[inside].astype(np.float64) ** 2) / n
    constant = None
    violations = pts
    for C in C_LOWER_GRID:
        worst = np.min(scaled - C * quad)
        if -np.log(C) <= worst:
            constant = float(C)
            violations = 0
            break
    if constant is None:
        C = C_LOWER_GRID[-1]
        violations = int(np.sum(scaled - C * quad < -np.log(C)))
    return LowerBound(cdp, radius, pts, missing, constant, violations + missing)


def check_table(
    spec: GroupSpec,
    table: ProbabilityTable,
    c_double_prime: float = DEFAULT_C_DOUBLE_PRIME,
    radius_cap: int = DEFAULT_RADIUS_CAP,
):
    n = table.step_count
    D = spec.growth_degree
    d, d_upper, radius_cap = _distances(spec, table.coords, radius_cap)
    resolved = d_upper >= 0
    p = table.probs
    upper = _upper_constants(p[resolved], d_upper[resolved], n, D)
    best = int(np.argmin(upper * C_PRIME_GRID))
    lower = {}
    for cdp in (c_double_prime / 2, c_double_prime, 2 * c_double_prime):
        lower[cdp] = _lower_bound(spec, p, d, n, D, cdp, radius_cap)
    point = HeatKernelPoint(
        n=n,
        return_probability=table.get(spec.identity()),
        support_size=table.support_size,
        resolved=int((d >= 0).sum()),
        unresolved=int((~resolved).sum()),
        bounded=int(((d < 0) & resolved).sum()),
        C=float(upper[best]),
        C_prime=float(C_PRIME_GRID[best]),
        lower=lower,
        lost_mass=float(table.lost_mass),
        symmetry_error=table.symmetry_error(),
    )
    return point, upper


def hsc_check(
    spec: GroupSpec,
    n_list: Sequence[int],
    c_double_prime: float = DEFAULT_C_DOUBLE_PRIME,
    radius_cap: int = DEFAULT_RADIUS_CAP,
    relative_floor: float = DEFAULT_RELATIVE_FLOOR,
) -> HeatKernelReport:
    wanted = sorted(set(int(n) for n in n_list))
    if not wanted or wanted[0] < 1:
        raise ValueError(f"n_list must hold positive step counts, got {list(n_list)}")
    points, uppers = [], []
    for table in heat_kernel(spec, wanted[-1], relative_floor):
        if table.step_count in wanted:
            point, upper = check_table(spec, table, c_double_prime, radius_cap)
            logger.info(
                f"{spec.id} n={point.n}: C={point.C:.4g} C'={point.C_prime:.4g} "
                f"bounded={point.bounded} unresolved={point.unresolved}"
            )
            points.append(point)
            uppers.append(upper)

    joint = np.max(np.vstack(uppers), axis=0)
    best = int(np.argmin(joint * C_PRIME_GRID))

    if len(points) >= 2:
        slope = float(
            np.polyfit(
                np.log([pt.n for pt in points]),
                np.log([pt.return_probability for pt in points]),
                1,
            )[0]
        )
    else:
        slope = float("nan")

    violations = []
    for pt in points:
        if pt.unresolved:
            violations.append(
                f"n={pt.n}: {pt.unresolved} support points have no distance or distance bound"
            )
        lb = pt.lower[c_double_prime]
        if lb.violations:
            violations.append(
                f"n={pt.n}: {lb.violations} points of B(e,{lb.radius}) below the lower bound"
            )
        if pt.symmetry_error > 1e-12:
            violations.append(f"n={pt.n}: symmetry error {pt.symmetry_error:.3e}")
    return HeatKernelReport(
        group_id=spec.id,
        growth_degree=spec.growth_degree,
        points=points,
        C=float(joint[best]),
        C_prime=float(C_PRIME_GRID[best]),
        slope=slope,
        c_double_prime=c_double_prime,
        violations=violations,
    )
