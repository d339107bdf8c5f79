import pytest

from dehnlab.errors import DomainError
from dehnlab.estimate.curve import Curve, CurvePoint
from dehnlab.estimate.fit import exponent_fit, fit_to_dict


def _power_curve(exponent, scales, c=3.0, rel=0.05):
    return Curve([CurvePoint(n, c * n ** exponent, rel * c * n ** exponent, 100) for n in scales])


@pytest.mark.parametrize("exponent", [0.5, 1.0, 2.0, 3.0])
def test_exact_power_law(exponent):
    fit = exponent_fit(_power_curve(exponent, [8, 16, 32, 64]))
    assert fit.slope == pytest.approx(exponent)
    assert fit.intercept == pytest.approx(1.0986, abs=1e-3)
    assert fit.weighted
    assert fit.points_used == 4
    assert fit.within(exponent, 1e-6)


def test_unweighted_when_some_stderr_is_zero():
    curve = Curve([CurvePoint(n, float(n ** 2), 0.0, 1) for n in [2, 4, 8]])
    fit = exponent_fit(curve)
    assert not fit.weighted
    assert fit.slope == pytest.approx(2.0)
    assert fit.slope_stderr == pytest.approx(0.0, abs=1e-9)


def test_noisy_first_point_dropped():
    curve = _power_curve(2.0, [4, 8, 16, 32])
    noisy = Curve([CurvePoint(4, 48.0, 20.0, 10)] + curve.points[1:])
    fit = exponent_fit(noisy)
    assert fit.points_used == 3
    assert fit.slope == pytest.approx(2.0)
    assert exponent_fit(noisy, drop_noisy_first=False).points_used == 4


def test_scatter_inflates_stderr():
    pts = [CurvePoint(8, 64.0, 0.64, 10), CurvePoint(16, 300.0, 3.0, 10), CurvePoint(32, 1024.0, 10.24, 10)]
    fit = exponent_fit(Curve(pts))
    assert fit.slope_stderr > 0.05


ex_errors = {
    "two_points": ([CurvePoint(2, 1.0, 0.1, 5), CurvePoint(4, 2.0, 0.1, 5)]),
    "zero_value": ([CurvePoint(2, 1.0, 0.1, 5), CurvePoint(4, 0.0, 0.1, 5), CurvePoint(8, 2.0, 0.1, 5)]),
}


@pytest.mark.parametrize("points", ex_errors.values(), ids=list(ex_errors.keys()))
def test_fit_domain_errors(points):
    with pytest.raises(DomainError):
        exponent_fit(Curve(points))


def test_fit_to_dict():
    d = fit_to_dict(exponent_fit(_power_curve(1.0, [2, 4, 8])))
    assert set(d) == {"slope", "intercept", "slope_stderr", "points_used", "weighted"}
