from fractions import Fraction

import pytest

from dehnlab.group.catalog import get_group
from dehnlab.walk.measure import step_measure


@pytest.mark.parametrize("group_id", ["z1", "z2", "heis3", "fnil2-3", "filiform4"])
def test_step_measure(group_id):
    spec = get_group(group_id)
    m = step_measure(spec)
    d = spec.generator_count
    assert len(m.elements) == 2 * d + 1
    assert sum(m.probabilities) == 1
    assert set(m.probabilities) == {Fraction(1, 2 * d + 1)}
    assert m.probability_of(spec.identity()) == Fraction(1, 2 * d + 1)
    # symmetric
    for g, p in m.support:
        assert m.probability_of(spec.inverse(g)) == p
    assert m.element_rows().shape == (2 * d + 1, spec.coordinate_arity)
    assert m.float_probabilities().sum() == pytest.approx(1.0)


def test_probability_outside_support():
    m = step_measure(get_group("z2"))
    assert m.probability_of((1, 1)) == 0
