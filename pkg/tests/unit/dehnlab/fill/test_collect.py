import pytest
from hypothesis import given

from dehnlab.errors import NotALoopError, UnsupportedGroupError
from dehnlab.fill.certificate import verify_certificate
from dehnlab.fill.collect import fill_word, return_available_fillers
from dehnlab.fill.oracle import winding_area
from dehnlab.group.catalog import get_group
from dehnlab.group.words import commutator, parse_word
from util import sampled_loops


@pytest.mark.parametrize("group_id,n", [("z2", 12), ("z3", 10), ("heis3", 12), ("fnil2-3", 10)])
def test_fill_sampled_loops(group_id, n):
    spec = get_group(group_id)

    @given(sampled_loops(group_id, n))
    def check(w):
        cert = fill_word(spec, w)
        assert cert.target == tuple(w)
        assert verify_certificate(spec, cert)

    check()


@given(sampled_loops("z2", 10))
def test_abelian_fill_bounds_winding_area(w):
    assert fill_word(get_group("z2"), w).area >= winding_area(w)


ex_area = {
    "z2_relator": (("z2", "abAB"), 1),
    "z2_lazy": (("z2", "a.bA.B."), 1),
    "z2_free_trivial": (("z2", "abBA"), 0),
    "heis3_relator": (("heis3", "aabABAbaBA"), 1),
}


@pytest.mark.parametrize("config,expected", ex_area.values(), ids=list(ex_area.keys()))
def test_fill_area(config, expected):
    group_id, text = config
    spec = get_group(group_id)
    cert = fill_word(spec, parse_word(text))
    assert verify_certificate(spec, cert)
    assert cert.area >= expected
    if expected == 0:
        assert cert.area == 0


def test_relators_fill():
    for gid in ["z3", "heis3", "fnil2-3"]:
        spec = get_group(gid)
        for r in spec.relators:
            assert verify_certificate(spec, fill_word(spec, r))


def test_fill_heis3_commutator_square():
    spec = get_group("heis3")
    w = commutator((1, 1), (2, 2)) + commutator((2,), (1,)) * 4
    assert verify_certificate(spec, fill_word(spec, w))


def test_fill_rejects_non_loop():
    with pytest.raises(NotALoopError):
        fill_word(get_group("heis3"), parse_word("abAB"))


def test_fill_unsupported_group():
    assert "Filiform4" not in return_available_fillers()
    with pytest.raises(UnsupportedGroupError):
        fill_word(get_group("filiform4"), parse_word("aA"))
