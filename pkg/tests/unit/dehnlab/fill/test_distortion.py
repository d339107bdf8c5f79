import pytest

from dehnlab.errors import UnsupportedGroupError
from dehnlab.fill.central import central_extension
from dehnlab.fill.distortion import distortion_probe
from dehnlab.group.catalog import get_group

ex_probe = {
    "z2": ("z2", (2.0, 4, [r ** 2 for r in range(7)])),
    "z3": ("z3", (2.0, 4, [r ** 2 for r in range(7)])),
    "heis3": ("heis3", (3.0, 10, [r ** 3 for r in range(7)])),
}


@pytest.mark.parametrize("config,expected", ex_probe.values(), ids=list(ex_probe.keys()))
def test_distortion_probe(config, expected):
    exponent, length_per_r, values = expected
    probe = distortion_probe(central_extension(get_group(config)), 6)
    assert probe.radii == list(range(7))
    assert probe.values == values
    assert [l for _, l, _ in probe.rows] == [length_per_r * r for r in range(7)]
    assert probe.exponent == pytest.approx(exponent)


def test_distortion_needs_two_generators():
    with pytest.raises(UnsupportedGroupError):
        distortion_probe(central_extension(get_group("z1")), 4)
