"""Cyclic-shift invariance of loop distances and the distribution tests behind it.

Rotating a loop by s letters preserves the uniform loop measure, so
d(w(s), w(t)) and d(e, w(t - s)) have the same law.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from dehnlab.errors import CapExceededError, DomainError
from dehnlab.estimate.enumerate import enumerate_loops
from dehnlab.estimate.sampling import draw_block
from dehnlab.group.catalog import GroupSpec, trace
from dehnlab.group.metric import DEFAULT_RADIUS_CAP, word_metric

logger = logging.getLogger("estimate_logger")


def ks_compare(a: Sequence[float], b: Sequence[float]) -> Tuple[float, float]:
    res = stats.ks_2samp(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
    return float(res.statistic), float(res.pvalue)


def chi_square_uniform(counts: Sequence[int]) -> Tuple[float, float]:
    """Chi-square statistic and p-value of ``counts`` against equal expected counts."""
    res = stats.chisquare(np.asarray(counts, dtype=np.float64))
    return float(res.statistic), float(res.pvalue)


def chi_square_expected(counts: Sequence[int], probabilities: Sequence[float]) -> Tuple[float, float]:
    counts = np.asarray(counts, dtype=np.float64)
    expected = np.asarray(probabilities, dtype=np.float64) * counts.sum()
    res = stats.chisquare(counts, expected)
    return float(res.statistic), float(res.pvalue)


@dataclass
class ShiftReport:
    group_id: str
    n: int
    s: int
    t: int
    mode: str
    identical: Optional[bool] = None
    statistic: Optional[float] = None
    p_value: Optional[float] = None
    shifted: Dict[int, Fraction] = field(default_factory=dict)
    anchored: Dict[int, Fraction] = field(default_factory=dict)
    failures: int = 0

    def passed(self, alpha: float = 0.01) -> bool:
        if self.mode == "exact":
            return bool(self.identical)
        return self.p_value is not None and self.p_value > alpha

    def to_dict(self) -> dict:
        return {
            "group": self.group_id,
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "mode": self.mode,
            "identical": self.identical,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "failures": self.failures,
        }


def _pair_distance(spec, w, s, t, radius_cap):
    tr = trace(spec, w)
    return word_metric(spec, tr[s], tr[t], radius_cap)


def shift_invariance_test(
    spec: GroupSpec,
    n: int,
    s: int,
    t: int,
    mode: str = "exact",
    samples: int = 5000,
    seed: int = 0,
    sampler: str = "auto",
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ShiftReport:
    if not 0 <= s < t <= n:
        raise DomainError(f"need 0 <= s < t <= n, got s={s}, t={t}, n={n}")
    report = ShiftReport(spec.id, n, s, t, mode)
    if mode == "exact":
        loops = enumerate_loops(spec, n)
        report.shifted = loops.distance_distribution(s, t)
        report.anchored = loops.distance_distribution(0, t - s)
        report.identical = report.shifted == report.anchored
        return report
    if mode != "sampled":
        raise ValueError(f"shift test mode {mode} not available in options ['exact', 'sampled']")

    # two disjoint sets of loops so the samples are independent
    first = draw_block(spec.id, n, seed, 0, samples, sampler)
    second = draw_block(spec.id, n, seed, samples, samples, sampler)
    a, b = [], []
    for loop in first:
        try:
            a.append(_pair_distance(spec, loop.word, s, t, radius_cap))
        except CapExceededError:
            report.failures += 1
    for loop in second:
        try:
            b.append(_pair_distance(spec, loop.word, 0, t - s, radius_cap))
        except CapExceededError:
            report.failures += 1
    if not a or not b:
        raise DomainError(f"no resolved distances for the shift test on {spec.id} (n={n})")
    report.statistic, report.p_value = ks_compare(a, b)
    logger.info(f"{spec.id} shift test n={n} s={s} t={t}: KS={report.statistic:.4f} p={report.p_value:.4f}")
    return report
