import pytest
from hypothesis import given

from dehnlab.errors import InvalidWordError
from dehnlab.group.words import (
    commutator,
    cyclic_reduce,
    format_word,
    free_reduce,
    invert_word,
    letter_order,
    parse_word,
    power,
    strip_lazy,
)
from util import words

ex_parse = {
    "plain": ("abAB", (1, 2, -1, -2)),
    "lazy": ("a.bA.B", (1, 0, 2, -1, 0, -2)),
    "spaces": (" a b ", (1, 2)),
    "empty": ("", ()),
    "third_gen": ("cC", (3, -3)),
    "bad_char": ("ab1", InvalidWordError),
}


@pytest.mark.parametrize("config,expected", ex_parse.values(), ids=list(ex_parse.keys()))
def test_parse_word(config, expected):
    if isinstance(expected, type) and issubclass(expected, Exception):
        with pytest.raises(expected):
            parse_word(config)
    else:
        assert parse_word(config) == expected


def test_parse_word_out_of_range():
    with pytest.raises(InvalidWordError):
        parse_word("abc", 2)


@given(words("z3"))
def test_format_parse(w):
    assert parse_word(format_word(w)) == w


ex_reduce = {
    "cancel_all": ((1, -1, 2, -2), ()),
    "nested": ((1, 2, -2, -1, 1), (1,)),
    "lazy_dropped": ((1, 0, -1, 0, 2), (2,)),
    "nothing": ((1, 2, -1, -2), (1, 2, -1, -2)),
}


@pytest.mark.parametrize("config,expected", ex_reduce.values(), ids=list(ex_reduce.keys()))
def test_free_reduce(config, expected):
    assert free_reduce(config) == expected


def test_small_helpers():
    assert letter_order(2) == [1, -1, 2, -2]
    assert strip_lazy((0, 1, 0, -2)) == (1, -2)
    assert invert_word((1, 2, 0)) == (0, -2, -1)
    assert commutator((1,), (2,)) == (1, 2, -1, -2)
    assert power((1, 2), 2) == (1, 2, 1, 2)
    assert power((1, 2), -1) == (-2, -1)
    assert power((1,), 0) == ()


@given(words("z2", 0, 14))
def test_cyclic_reduce(w):
    u, core = cyclic_reduce(w)
    assert free_reduce(invert_word(u) + core + u) == free_reduce(w)
    if len(core) > 1:
        assert core[0] != -core[-1]
