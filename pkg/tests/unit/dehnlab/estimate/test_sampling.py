import pytest

from dehnlab.errors import CapExceededError, DomainError, PartialResultsError
from dehnlab.estimate.curve import RunningMoments
from dehnlab.estimate.sampling import (
    build_curve,
    draw_block,
    evaluate_block,
    merge_blocks,
    split_blocks,
)
from dehnlab.estimate.shift import ks_compare
from dehnlab.group.catalog import get_group, is_loop, trace
from dehnlab.group.metric import norm


@pytest.mark.parametrize("group_id,sampler", [("z2", "bridge"), ("z2", "rejection"), ("heis3", "projected")])
def test_blocks_do_not_depend_on_split(group_id, sampler):
    whole = draw_block(group_id, 8, 3, 0, 10, sampler)
    parts = draw_block(group_id, 8, 3, 0, 4, sampler) + draw_block(group_id, 8, 3, 4, 6, sampler)
    assert [s.word for s in whole] == [s.word for s in parts]
    assert [s.index for s in whole] == list(range(10))
    spec = get_group(group_id)
    assert all(is_loop(spec, s.word) for s in whole)


def test_seed_changes_samples():
    a = draw_block("z2", 12, 0, 0, 8, "bridge")
    b = draw_block("z2", 12, 1, 0, 8, "bridge")
    assert [s.word for s in a] != [s.word for s in b]


def test_split_blocks():
    blocks = split_blocks("z2", [4, 8], 150, 7, "auto", block_size=64)
    assert blocks == [
        ("z2", 4, 7, 0, 64, "auto"),
        ("z2", 4, 7, 64, 64, "auto"),
        ("z2", 4, 7, 128, 22, "auto"),
        ("z2", 8, 7, 0, 64, "auto"),
        ("z2", 8, 7, 64, 64, "auto"),
        ("z2", 8, 7, 128, 22, "auto"),
    ]
    with pytest.raises(DomainError):
        split_blocks("z2", [4], 0, 7, "auto")


def _flaky(loop):
    if loop.index % 3 == 0:
        raise CapExceededError("too far", cap=1)
    if loop.index % 3 == 1:
        return None
    return {"len": len(loop)}


def test_evaluate_block_counts_failures():
    n, stats, failures, err = evaluate_block(("z2", 6, 0, 0, 9, "bridge"), _flaky)
    assert (n, failures, err) == (6, 6, None)
    assert stats["len"].count == 3
    assert stats["len"].mean == 6


def test_merge_blocks():
    results = [
        (4, {"x": RunningMoments.of([1.0, 2.0])}, 1, None),
        (4, {"x": RunningMoments.of([3.0])}, 0, "boom"),
        (8, {}, 2, None),
    ]
    merged, failures, errors = merge_blocks(results)
    assert merged[4]["x"].count == 3
    assert merged[4]["x"].mean == pytest.approx(2.0)
    assert merged[8] == {}
    assert failures == {4: 1, 8: 2}
    assert errors == ["n=4: boom"]


def test_build_curve_partial():
    moments = {4: RunningMoments.of([1.0, 2.0])}
    curve = build_curve("demo", [4], moments, {4: 0})
    assert curve.values == [1.5]
    with pytest.raises(PartialResultsError) as e:
        build_curve("demo", [4, 8], moments, {4: 0, 8: 5}, ["n=8: exhausted"])
    partial = e.value.partial
    assert partial.scales == [4]
    assert partial.failures == {8: 5}
    assert partial.meta["errors"] == ["n=8: exhausted"]


def _half_way_distances(group_id, n, loops):
    spec = get_group(group_id)
    return [norm(spec, trace(spec, s.word)[n // 2]) for s in loops]


def test_bridge_and_rejection_agree():
    n = 16
    bridge = draw_block("z2", n, 5, 0, 1500, "bridge")
    rejection = draw_block("z2", n, 5, 1500, 1500, "rejection")
    _, p = ks_compare(_half_way_distances("z2", n, bridge), _half_way_distances("z2", n, rejection))
    assert p > 1e-3
