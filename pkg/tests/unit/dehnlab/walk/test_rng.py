import numpy as np

from dehnlab.walk.rng import substream, substreams


def test_substream_reproducible():
    a = substream(7, 3, scale=16).random(5)
    b = substream(7, 3, scale=16).random(5)
    assert np.array_equal(a, b)


def test_substreams_independent_of_split():
    whole = [g.random(3) for g in substreams(11, 0, 6, scale=8)]
    parts = [g.random(3) for g in substreams(11, 0, 2, scale=8)]
    parts += [g.random(3) for g in substreams(11, 2, 4, scale=8)]
    for x, y in zip(whole, parts):
        assert np.array_equal(x, y)


def test_substreams_differ():
    base = substream(1, 0, scale=4).random(4)
    assert not np.array_equal(base, substream(1, 1, scale=4).random(4))
    assert not np.array_equal(base, substream(1, 0, scale=5).random(4))
    assert not np.array_equal(base, substream(2, 0, scale=4).random(4))
    assert not np.array_equal(base, substream(1, 0).random(4))
