import pytest

from dehnlab.errors import InvalidWordError, UnsupportedGroupError
from dehnlab.group.catalog import (
    abelianization,
    eval_word,
    get_group,
    is_loop,
    letter_elements,
    return_available_groups,
    trace,
)
from dehnlab.group.words import commutator, parse_word

ex_groups = {
    "z1": ("z1", (1, 1, 1, 0)),
    "z2": ("z2", (2, 2, 2, 2)),
    "z3": ("z3", (3, 3, 3, 2)),
    "heis3": ("heis3", (2, 3, 4, 3)),
    "fnil2-2": ("fnil2-2", (2, 3, 4, 3)),
    "fnil2-3": ("fnil2-3", (3, 6, 9, 3)),
    "filiform4": ("filiform4", (2, 4, 7, None)),
}


@pytest.mark.parametrize("config,expected", ex_groups.values(), ids=list(ex_groups.keys()))
def test_catalog_entries(config, expected):
    spec = get_group(config)
    got = (spec.generator_count, spec.coordinate_arity, spec.growth_degree, spec.filling_degree)
    assert got == expected


@pytest.mark.parametrize("group_id", return_available_groups())
def test_relators_are_loops(group_id):
    spec = get_group(group_id)
    assert spec.relators or spec.generator_count == 1
    for r in spec.relators:
        assert is_loop(spec, r)


def test_heis3_relators():
    spec = get_group("heis3")
    a, b = (1,), (2,)
    ab = commutator(a, b)
    assert spec.relators == (commutator(a, ab), commutator(b, ab))


def test_letters():
    spec = get_group("z2")
    assert spec.letters == [0, 1, -1, 2, -2]
    assert letter_elements(spec) == {0: (0, 0), 1: (1, 0), -1: (-1, 0), 2: (0, 1), -2: (0, -1)}


ex_eval = {
    "z2_loop": (("z2", "abAB"), (0, 0)),
    "heis3_commutator": (("heis3", "abAB"), (0, 0, 1)),
    "heis3_inverse_commutator": (("heis3", "baBA"), (0, 0, -1)),
    "heis3_lazy": (("heis3", "a..b"), (1, 1, 1)),
    "heis3_loop": (("heis3", "abABabaBAA"), (0, 0, 0)),
}


@pytest.mark.parametrize("config,expected", ex_eval.values(), ids=list(ex_eval.keys()))
def test_eval_word(config, expected):
    group_id, text = config
    spec = get_group(group_id)
    assert eval_word(spec, parse_word(text)) == expected


def test_commutator_identity():
    # [a, b] = [A, B] in the Heisenberg group
    spec = get_group("heis3")
    assert eval_word(spec, parse_word("abAB")) == eval_word(spec, parse_word("ABab"))
    assert is_loop(spec, parse_word("abABbaBA"))


def test_trace():
    spec = get_group("heis3")
    tr = trace(spec, parse_word("a.b"))
    assert len(tr) == 4
    assert tr[0] == (0, 0, 0)
    assert tr[1] == tr[2] == (1, 0, 0)
    assert tr.endpoint == (1, 1, 1)


def test_eval_rejects_bad_letter():
    with pytest.raises(InvalidWordError):
        eval_word(get_group("z2"), (3,))


ex_ids = {
    "upper": ("HEIS3", "heis3"),
    "z5": ("z5", "z5"),
    "fnil2-4": ("fnil2-4", "fnil2-4"),
    "unknown": ("sl3", UnsupportedGroupError),
    "z0": ("z0", UnsupportedGroupError),
}


@pytest.mark.parametrize("config,expected", ex_ids.values(), ids=list(ex_ids.keys()))
def test_get_group(config, expected):
    if isinstance(expected, type) and issubclass(expected, Exception):
        with pytest.raises(expected):
            get_group(config)
    else:
        assert get_group(config).id == expected


def test_abelianization():
    assert abelianization(get_group("heis3")).id == "z2"
    assert abelianization(get_group("fnil2-3")).id == "z3"
    assert abelianization(get_group("filiform4")).id == "z2"
