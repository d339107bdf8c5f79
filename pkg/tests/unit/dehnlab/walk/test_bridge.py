from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from dehnlab.errors import DomainError
from dehnlab.estimate.enumerate import enumerate_loops
from dehnlab.group.catalog import get_group, is_loop
from dehnlab.walk.bridge import (
    hat_p,
    resolve_method,
    sample_loop_bridge,
    sample_loops,
    sample_loops_bridge,
    tables_for,
)
from dehnlab.walk.rng import substream, substreams
from dehnlab.walk.table import return_tables


@pytest.mark.parametrize("group_id", ["z1", "z2", "z3", "heis3"])
def test_bridge_gives_loops(group_id):
    spec = get_group(group_id)
    samples = sample_loops_bridge(spec, 12, substreams(0, 0, 30, scale=12))
    for s in samples:
        assert len(s) == 12
        assert is_loop(spec, s.word)
        assert s.method == "bridge"


def test_bridge_zero_length():
    s = sample_loop_bridge(get_group("z2"), 0, substream(0, 0))
    assert s.word == ()


def test_bridge_reproducible_and_batch_independent():
    spec = get_group("z2")
    tables = return_tables(spec, 9)
    batch = sample_loops_bridge(spec, 10, substreams(4, 0, 8, scale=10), tables)
    single = [sample_loop_bridge(spec, 10, substream(4, i, scale=10), tables) for i in range(8)]
    assert [s.word for s in batch] == [s.word for s in single]


def test_bridge_tables_checked():
    spec = get_group("z2")
    with pytest.raises(DomainError):
        sample_loops_bridge(spec, 10, substreams(0, 0, 1), return_tables(spec, 4))
    with pytest.raises(DomainError):
        sample_loops_bridge(spec, 4, substreams(0, 0, 1), return_tables(get_group("z3"), 4))


def _chi_square_pvalue(spec, n, samples):
    loops = enumerate_loops(spec, n).loops
    counts = Counter(s.word for s in samples)
    assert set(counts) <= set(loops)
    observed = np.array([counts.get(w, 0) for w in loops])
    return stats.chisquare(observed).pvalue


def test_bridge_uniform_on_loops():
    spec = get_group("z2")
    samples = sample_loops_bridge(spec, 3, substreams(0, 0, 2600, scale=3))
    assert _chi_square_pvalue(spec, 3, samples) > 1e-3


def test_projected_uniform_on_loops():
    spec = get_group("heis3")
    samples = sample_loops(spec, 4, substreams(0, 0, 2000, scale=4), "projected")
    assert all(s.method == "projected" for s in samples)
    assert _chi_square_pvalue(spec, 4, samples) > 1e-3


ex_methods = {
    "auto_abelian": (("z2", "auto"), "bridge"),
    "auto_heis": (("heis3", "auto"), "projected"),
    "explicit": (("heis3", "rejection"), "rejection"),
    "unknown": (("z2", "gibbs"), KeyError),
}


@pytest.mark.parametrize("config,expected", ex_methods.values(), ids=list(ex_methods.keys()))
def test_resolve_method(config, expected):
    group_id, method = config
    if isinstance(expected, type) and issubclass(expected, Exception):
        with pytest.raises(expected):
            resolve_method(get_group(group_id), method)
    else:
        assert resolve_method(get_group(group_id), method) == expected


def test_tables_for():
    assert tables_for(get_group("heis3"), 6, "rejection") is None
    assert tables_for(get_group("heis3"), 6, "projected").spec.id == "z2"
    assert len(tables_for(get_group("z3"), 6, "bridge")) == 6


def test_hat_p_is_a_distribution():
    spec = get_group("z2")
    tables = return_tables(spec, 6, mode="rational")
    for t, x in [(0, (0, 0)), (1, (1, 0)), (3, (1, -1)), (5, (0, 1))]:
        total = sum(hat_p(spec, x, spec.multiply(x, spec.letter_element(l)), t, 6, tables) for l in spec.letters)
        assert total == Fraction(1)


def test_hat_p_last_step_is_forced():
    spec = get_group("z2")
    assert hat_p(spec, (1, 0), (0, 0), 3, 4) == pytest.approx(1.0)
    assert hat_p(spec, (1, 0), (1, 0), 3, 4) == 0


def test_hat_p_domain():
    spec = get_group("z2")
    with pytest.raises(DomainError):
        hat_p(spec, (0, 0), (0, 0), 4, 4)
    with pytest.raises(DomainError):
        hat_p(spec, (3, 0), (3, 0), 1, 4)
    with pytest.raises(DomainError):
        # reachable after 2 steps, but cannot come back in the remaining 1
        hat_p(spec, (2, 0), (2, 0), 2, 3)


@pytest.mark.slow
def test_hat_p_first_step_near_uniform_for_long_loops():
    spec = get_group("z2")
    n = 512
    tables = return_tables(spec, n)
    e = spec.identity()
    for letter in spec.letters:
        y = spec.letter_element(letter)
        assert hat_p(spec, e, y, 0, n, tables) == pytest.approx(0.2, abs=0.02)
