from fractions import Fraction

import pytest

from dehnlab.errors import BudgetExceededError
from dehnlab.estimate.enumerate import enumerate_loops, exact_average
from dehnlab.group.catalog import get_group, is_loop

ex_counts = {
    "n0": (0, 1),
    "n1": (1, 1),
    "n2": (2, 5),
    "n3": (3, 13),
    "n4": (4, 61),
    "n5": (5, 221),
    "n6": (6, 1001),
}


@pytest.mark.parametrize("config,expected", ex_counts.values(), ids=list(ex_counts.keys()))
def test_z2_loop_counts(config, expected):
    loops = enumerate_loops(get_group("z2"), config)
    assert loops.loop_count == expected
    assert loops.word_count == 5 ** config


@pytest.mark.slow
def test_z2_loop_count_eight():
    assert enumerate_loops(get_group("z2"), 8).loop_count == 18733


def test_heis3_loop_count():
    # the 8 unit squares through e enclose area and do not close up
    spec = get_group("heis3")
    loops = enumerate_loops(spec, 4)
    assert loops.loop_count == 53
    assert all(is_loop(spec, w) for w in loops.loops)


def test_probabilities():
    loops = enumerate_loops(get_group("z2"), 2)
    assert loops.return_probability == Fraction(1, 5)
    assert loops.loop_probability == Fraction(1, 5)
    assert sorted(loops.loops) == sorted([(0, 0), (1, -1), (-1, 1), (2, -2), (-2, 2)])


def test_distributions():
    loops = enumerate_loops(get_group("z2"), 4)
    dist = loops.distance_distribution(0, 2)
    assert sum(dist.values()) == 1
    assert set(dist) <= {0, 1, 2}
    assert loops.position_distribution(0) == {(0, 0): Fraction(1)}
    assert loops.position_distribution(4) == {(0, 0): Fraction(1)}


def test_exact_average():
    spec = get_group("z2")
    assert exact_average(spec, 4, len) == 4
    assert exact_average(spec, 2, lambda w: sum(1 for x in w if x == 0)) == Fraction(2, 5)


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_loops(get_group("z2"), 10, max_words=1000)
