from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from dehnlab.errors import BudgetExceededError, DomainError
from dehnlab.group.catalog import eval_word, get_group
from dehnlab.group.metric import norm
from dehnlab.walk.measure import step_measure
from dehnlab.walk.table import (
    convolve,
    delta_table,
    heat_kernel,
    return_tables,
    table_to_csv,
)


def test_delta():
    spec = get_group("heis3")
    tab = delta_table(spec)
    assert tab.step_count == 0
    assert tab.get((0, 0, 0)) == 1.0
    assert tab.get((1, 0, 0)) == 0.0
    assert tab.total_mass() == 1.0


ex_return = {
    "z1_2": (("z1", 2), Fraction(1, 3)),
    "z2_1": (("z2", 1), Fraction(1, 5)),
    "z2_2": (("z2", 2), Fraction(1, 5)),
    "heis3_2": (("heis3", 2), Fraction(1, 5)),
}


@pytest.mark.parametrize("config,expected", ex_return.values(), ids=list(ex_return.keys()))
def test_return_probability(config, expected):
    group_id, n = config
    spec = get_group(group_id)
    exact = return_tables(spec, n, mode="rational")[n]
    assert exact.mode == "rational"
    assert exact.get(spec.identity()) == expected
    assert exact.total_mass() == 1
    approx = return_tables(spec, n)[n]
    assert approx.get(spec.identity()) == pytest.approx(float(expected))


@pytest.mark.parametrize("group_id", ["z2", "heis3", "filiform4"])
def test_mass_and_symmetry(group_id):
    spec = get_group(group_id)
    for tab in heat_kernel(spec, 6, relative_floor=0.0):
        assert tab.total_mass() == pytest.approx(1.0)
        assert tab.symmetry_error() < 1e-12


def test_rational_matches_float():
    spec = get_group("heis3")
    exact = return_tables(spec, 4, mode="rational")[4]
    approx = return_tables(spec, 4, relative_floor=0.0)[4]
    assert exact.support_size == approx.support_size
    for x, p in exact.items():
        assert approx.get(x) == pytest.approx(float(p))


def test_truncation_keeps_mass_accounted():
    spec = get_group("z2")
    m = step_measure(spec)
    tab = convolve(convolve(delta_table(spec), m), m, relative_floor=0.5)
    assert tab.support_size == 1
    assert tab.get((0, 0)) == pytest.approx(0.2)
    assert tab.lost_mass == pytest.approx(0.8)
    assert tab.total_mass() == pytest.approx(1.0)


def test_convolve_budget():
    spec = get_group("z2")
    with pytest.raises(BudgetExceededError):
        convolve(delta_table(spec), step_measure(spec), max_entries=3)


def test_convolve_wrong_group():
    with pytest.raises(DomainError):
        convolve(delta_table(get_group("z2")), step_measure(get_group("heis3")))


def test_lookup_rows():
    spec = get_group("z2")
    tab = return_tables(spec, 1)[1]
    got = tab.lookup_rows([[0, 0], [1, 0], [5, 5], [-1, 0]])
    assert got.tolist() == pytest.approx([0.2, 0.2, 0.0, 0.2])


def test_checkpointed_sequence_matches_stored():
    spec = get_group("z2")
    full = return_tables(spec, 9)
    small = return_tables(spec, 9, store_budget=20)
    assert not full.checkpointed
    assert small.checkpointed
    assert len(small) == 10
    for t in [9, 1, 5, 4, 0, 8, 2]:
        a, b = full[t].entries, small[t].entries
        assert a.keys() == b.keys()
        for x in a:
            assert b[x] == pytest.approx(a[x])
    assert small[-1].step_count == 9
    with pytest.raises(IndexError):
        small[10]


def test_table_to_csv(tmp_path):
    spec = get_group("z2")
    path = table_to_csv(return_tables(spec, 1)[1], tmp_path.joinpath("table.csv"))
    lines = path.read_text().splitlines()
    assert lines[0] == "c0,c1,probability"
    assert len(lines) == 6
    assert "0,0,0.2" in lines


@pytest.mark.parametrize("group_id", ["z2", "heis3", "filiform4"])
def test_support_inside_ball(group_id):
    spec = get_group(group_id)
    for t, tab in enumerate(heat_kernel(spec, 6)):
        assert all(norm(spec, c) <= t for c, _ in tab.items())


def _word_counts(spec, n):
    return Counter(eval_word(spec, w) for w in product(spec.letters, repeat=n))


ex_enumerated = {
    "z1_5": ("z1", 5),
    "z2_4": ("z2", 4),
    "z2_6": ("z2", 6),
    "heis3_5": ("heis3", 5),
    "z2_8": pytest.param("z2", 8, marks=pytest.mark.slow),
}


@pytest.mark.parametrize("group_id,n", ex_enumerated.values(), ids=list(ex_enumerated.keys()))
def test_rational_table_counts_words(group_id, n):
    spec = get_group(group_id)
    exact = return_tables(spec, n, mode="rational")[n]
    total = len(spec.letters) ** n
    expected = {g: Fraction(c, total) for g, c in _word_counts(spec, n).items()}
    assert dict(exact.items()) == expected
