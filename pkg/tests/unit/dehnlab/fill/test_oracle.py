import pytest

from dehnlab.errors import DomainError, NotALoopError
from dehnlab.estimate.enumerate import enumerate_loops
from dehnlab.fill.oracle import exact_area_search, signed_area, winding_area
from dehnlab.group.catalog import get_group
from dehnlab.group.words import parse_word

ex_winding = {
    "empty": ("", (0, 0)),
    "lazy": ("..", (0, 0)),
    "back_forth": ("aA", (0, 0)),
    "unit": ("abAB", (1, 1)),
    "unit_reversed": ("baBA", (1, -1)),
    "square": ("aabbAABB", (4, 4)),
    "figure_eight": ("abABAbaB", (2, 0)),
    "rectangle": ("aaabAAAB", (3, 3)),
    "doubled": ("abABabAB", (2, 2)),
}


@pytest.mark.parametrize("config,expected", ex_winding.values(), ids=list(ex_winding.keys()))
def test_winding_and_signed_area(config, expected):
    w = parse_word(config)
    assert (winding_area(w), signed_area(w)) == expected


def test_winding_area_errors():
    with pytest.raises(NotALoopError):
        winding_area(parse_word("ab"))
    with pytest.raises(DomainError):
        winding_area(parse_word("cC"))


ex_search = {
    "empty": (("z2", ""), 0),
    "free_trivial": (("z2", "aBbA"), 0),
    "unit": (("z2", "abAB"), 1),
    "square": (("z2", "aabbAABB"), 4),
    "figure_eight": (("z2", "abABAbaB"), 2),
    "z3_cell": (("z3", "acAC"), 1),
    "heis3_relator": (("heis3", "aabABAbaBA"), 1),
}


@pytest.mark.parametrize("config,expected", ex_search.values(), ids=list(ex_search.keys()))
def test_exact_area_search(config, expected):
    group_id, text = config
    assert exact_area_search(get_group(group_id), parse_word(text), budget=6) == expected


def test_exact_area_search_budget():
    assert exact_area_search(get_group("z2"), parse_word("aabbAABB"), budget=3) is None


def test_exact_area_search_not_a_loop():
    with pytest.raises(NotALoopError):
        exact_area_search(get_group("z2"), parse_word("ab"))


def test_search_agrees_with_winding_on_short_loops():
    spec = get_group("z2")
    for n in range(5):
        for w in enumerate_loops(spec, n).loops:
            assert exact_area_search(spec, w, budget=4) == winding_area(w)
