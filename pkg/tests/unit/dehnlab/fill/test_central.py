import pytest
from hypothesis import given
from hypothesis import strategies as st

from dehnlab.errors import NotALoopError, UnsupportedGroupError
from dehnlab.fill.central import central_coordinates, central_extension, centralized_area, lift
from dehnlab.group.catalog import get_group
from dehnlab.group.words import parse_word
from util import sampled_loops


def test_free_abelian_extension():
    ext = central_extension(get_group("z3"))
    assert ext.extension_id == "fnil2-3"
    assert ext.central_indices == (3, 4, 5)
    assert ext.distortion_degree == 2
    assert ext.base.id == "z3"


def test_heisenberg_extension():
    ext = central_extension(get_group("heis3"))
    assert ext.extension.id == "filiform4"
    assert ext.central_indices == (0,)
    assert ext.distortion_degree == 3
    assert lift(ext, parse_word("a")) == (0, 0, 0, 1)


def test_unsupported_extension():
    with pytest.raises(UnsupportedGroupError):
        central_extension(get_group("fnil2-3"))


ex_central = {
    "z2_unit": (("z2", "abAB"), 1),
    "z2_square": (("z2", "aabbAABB"), 4),
    "z2_figure_eight": (("z2", "abABAbaB"), 0),
    "z3_two_planes": (("z3", "abABacAC"), 2),
    "heis3_relator": (("heis3", "aabABAbaBA"), 1),
    "heis3_free_trivial": (("heis3", "abBA"), 0),
}


@pytest.mark.parametrize("config,expected", ex_central.values(), ids=list(ex_central.keys()))
def test_centralized_area(config, expected):
    group_id, text = config
    assert centralized_area(get_group(group_id), parse_word(text)) == expected


def test_central_coordinates_need_a_loop():
    ext = central_extension(get_group("z2"))
    with pytest.raises(NotALoopError):
        central_coordinates(ext, parse_word("ab"))


@pytest.mark.parametrize("group_id", ["z2", "z3", "heis3"])
@given(data=st.data())
def test_central_coordinates_rotation_invariant(group_id, data):
    ext = central_extension(get_group(group_id))
    w = data.draw(sampled_loops(group_id, 12))
    k = data.draw(st.integers(0, len(w)))
    assert central_coordinates(ext, w[k:] + w[:k]) == central_coordinates(ext, w)
