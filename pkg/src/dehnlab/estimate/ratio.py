import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from dehnlab.estimate.curve import Curve, CurvePoint
from dehnlab.group.catalog import GroupSpec
from dehnlab.walk.table import DEFAULT_RELATIVE_FLOOR, heat_kernel

logger = logging.getLogger("estimate_logger")


@dataclass
class RatioReport:
    group_id: str
    curves: Dict[Tuple[int, ...], Curve] = field(default_factory=dict)
    # limit extrapolated linearly in 1/n
    limits: Dict[Tuple[int, ...], float] = field(default_factory=dict)
    missing: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)
    non_monotone: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)

    def last_ratio(self, x) -> float:
        return self.curves[tuple(x)].points[-1].value

    def to_dict(self) -> dict:
        return {
            "group": self.group_id,
            "ratios": {str(k): c.to_rows() for k, c in self.curves.items()},
            "limits": {str(k): v for k, v in self.limits.items()},
            "missing": [[list(x), n] for x, n in self.missing],
            "non_monotone": [[list(x), n] for x, n in self.non_monotone],
        }


def ratio_limit_check(
    spec: GroupSpec,
    x_list: Sequence[Sequence[int]],
    n_list: Sequence[int],
    relative_floor: float = DEFAULT_RELATIVE_FLOOR,
    mode: str = "float",
) -> RatioReport:
    """p^(n)(x) / p^(n)(e) for every x and n, from exact convolution.

    In rational mode the ratios are exact fractions, rounded only when stored
    in the curve.
    """
    xs = [tuple(int(c) for c in x) for x in x_list]
    wanted = sorted(set(int(n) for n in n_list))
    report = RatioReport(spec.id)
    rows: Dict[Tuple[int, ...], List[CurvePoint]] = {x: [] for x in xs}
    e = spec.identity()
    for table in heat_kernel(spec, wanted[-1], relative_floor, mode):
        n = table.step_count
        if n not in wanted:
            continue
        pe = table.get(e)
        for x in xs:
            px = table.get(x)
            if px == 0 or pe == 0:
                report.missing.append((x, n))
                continue
            rows[x].append(CurvePoint(n, float(px / pe), 0.0, 1))
    for x in xs:
        pts = rows[x]
        report.curves[x] = Curve(pts, f"{spec.id} p(x)/p(e) at {x}")
        for prev, cur in zip(pts, pts[1:]):
            if cur.value < prev.value:
                report.non_monotone.append((x, cur.scale))
        if len(pts) >= 2:
            inv_n = np.array([1.0 / p.scale for p in pts])
            vals = np.array([p.value for p in pts])
            report.limits[x] = float(np.polyfit(inv_n, vals, 1)[1])
        elif pts:
            report.limits[x] = pts[-1].value
    if report.non_monotone:
        logger.info(f"{spec.id}: ratios not monotone at {report.non_monotone}")
    return report
