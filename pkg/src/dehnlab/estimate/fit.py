import logging
from dataclasses import dataclass

import numpy as np

from dehnlab.errors import DomainError
from dehnlab.estimate.curve import Curve

# the smallest scale is left out of a fit when its relative stderr is above this
NOISY_FIRST_POINT = 0.2

logger = logging.getLogger("estimate_logger")


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    slope_stderr: float
    points_used: int
    weighted: bool = True

    def within(self, expected: float, tolerance: float) -> bool:
        return abs(self.slope - expected) <= tolerance


def exponent_fit(curve: Curve, drop_noisy_first: bool = True) -> ExponentFit:
    """Least squares of log value on log scale, weighted by inverse squared relative stderr.

    Falls back to an unweighted fit when some point has zero stderr.
    """
    points = list(curve.points)
    if len(points) < 3:
        raise DomainError(f"an exponent fit needs at least 3 points, got {len(points)}")
    for p in points:
        if p.value <= 0 or p.scale <= 0:
            raise DomainError(
                f"cannot fit a power law through scale {p.scale} with value {p.value}"
            )
    if drop_noisy_first and len(points) > 3:
        p0 = points[0]
        if p0.stderr / p0.value > NOISY_FIRST_POINT:
            logger.info(
                f"dropping scale {p0.scale} from the fit (relative stderr {p0.stderr / p0.value:.2f})"
            )
            points = points[1:]

    x = np.log([p.scale for p in points])
    y = np.log([p.value for p in points])
    rel = np.array([p.stderr / p.value for p in points])
    weighted = bool(np.all(rel > 0))
    w = 1.0 / rel ** 2 if weighted else np.ones_like(x)

    X = np.column_stack([np.ones_like(x), x])
    XtW = X.T * w
    cov = np.linalg.inv(XtW @ X)
    intercept, slope = cov @ (XtW @ y)
    resid = y - (intercept + slope * x)
    dof = len(points) - 2
    if weighted:
        # inflate by the reduced chi-square when the scatter exceeds the stderrs
        chi2 = float(np.sum(w * resid ** 2)) / dof if dof > 0 else 0.0
        cov = cov * max(1.0, chi2)
    else:
        cov = cov * (float(np.sum(resid ** 2)) / dof if dof > 0 else 0.0)
    return ExponentFit(
        slope=float(slope),
        intercept=float(intercept),
        slope_stderr=float(np.sqrt(max(cov[1, 1], 0.0))),
        points_used=len(points),
        weighted=weighted,
    )


def fit_to_dict(fit: ExponentFit) -> dict:
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "slope_stderr": fit.slope_stderr,
        "points_used": fit.points_used,
        "weighted": fit.weighted,
    }
