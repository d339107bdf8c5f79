from hypothesis import given

from dehnlab.fill.certificate import verify_certificate
from dehnlab.fill.triangle import triangle_fill, triangle_word
from dehnlab.group.catalog import eval_word, get_group, is_loop
from util import words


@given(words("heis3", 0, 4), words("heis3", 0, 4), words("heis3", 0, 4))
def test_triangle_fill(u, v, w):
    spec = get_group("heis3")
    x, y, z = (eval_word(spec, s) for s in (u, v, w))
    assert is_loop(spec, triangle_word(spec, x, y, z))
    cert = triangle_fill(spec, x, y, z)
    assert verify_certificate(spec, cert)


def test_degenerate_triangle():
    spec = get_group("z2")
    cert = triangle_fill(spec, (1, 1), (1, 1), (1, 1))
    assert cert.area == 0
    assert cert.target == ()


def test_triangle_word_z2():
    spec = get_group("z2")
    assert triangle_word(spec, (0, 0), (1, 0), (1, 1)) == (1, 2, -2, -1)
