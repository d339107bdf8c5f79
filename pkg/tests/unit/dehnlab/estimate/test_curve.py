import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dehnlab.estimate.curve import Curve, CurvePoint, RunningMoments

values = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=0, max_size=30)


@given(values, values)
def test_running_moments_merge(a, b):
    merged = RunningMoments.of(a).merge(RunningMoments.of(b))
    whole = RunningMoments.of(a + b)
    assert merged.count == whole.count
    assert merged.mean == pytest.approx(whole.mean, abs=1e-9)
    assert merged.m2 == pytest.approx(whole.m2, rel=1e-9, abs=1e-6)


def test_running_moments_push():
    m = RunningMoments()
    for x in [1.0, 2.0, 3.0, 4.0]:
        m.push(x)
    assert m.count == 4
    assert m.mean == pytest.approx(2.5)
    assert m.variance == pytest.approx(np.var([1, 2, 3, 4], ddof=1))
    assert m.stderr == pytest.approx(np.sqrt(m.variance / 4))
    assert np.isnan(RunningMoments().stderr)


def test_point_from_moments():
    p = CurvePoint.from_moments(8, RunningMoments.of([5.0]))
    assert (p.scale, p.value, p.stderr, p.sample_count) == (8, 5.0, 0.0, 1)


def test_curve_validation():
    with pytest.raises(ValueError):
        Curve([CurvePoint(4, 1.0, 0.1, 10), CurvePoint(4, 2.0, 0.1, 10)])
    with pytest.raises(ValueError):
        Curve([CurvePoint(4, 1.0, -0.1, 10)])


def test_curve_accessors(tmp_path):
    c = Curve([CurvePoint(2, 1.0, 0.5, 4), CurvePoint(4, 3.0, 0.25, 4)], "demo", {4: 1})
    assert len(c) == 2
    assert c.scales == [2, 4]
    assert c.values == [1.0, 3.0]
    assert c.at(4).value == 3.0
    assert c.at(3) is None
    s = c.scaled(-2.0)
    assert s.values == [-2.0, -6.0]
    assert s.stderrs == [1.0, 0.5]
    assert c.to_dict()["failures"] == {"4": 1}
    path = c.to_csv(tmp_path.joinpath("curve.csv"))
    assert path.read_text().splitlines() == [
        "scale,value,stderr,sample_count",
        "2,1.0,0.5,4",
        "4,3.0,0.25,4",
    ]


def test_to_csv_meta_lines(tmp_path):
    c = Curve([CurvePoint(2, 1.0, 0.5, 4)])
    path = c.to_csv(tmp_path.joinpath("curve.csv"), {"config_hash": "ab12", "seed": 3})
    assert path.read_text().splitlines() == [
        "# config_hash: ab12",
        "# seed: 3",
        "scale,value,stderr,sample_count",
        "2,1.0,0.5,4",
    ]
