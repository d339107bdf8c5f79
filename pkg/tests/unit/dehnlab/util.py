from pathlib import Path

import yaml
from hypothesis import strategies as st

from dehnlab.group.catalog import get_group
from dehnlab.walk.rng import substream
from dehnlab.walk.samplers import sample_loop_rejection


def words(group_id: str, min_size: int = 0, max_size: int = 12):
    """Lazy words over the letters of a catalog group."""
    return st.lists(
        st.sampled_from(get_group(group_id).letters), min_size=min_size, max_size=max_size
    ).map(tuple)


def write_config(tmp_path: Path, config: dict, name: str = "cfg.yml") -> Path:
    path = Path(tmp_path).joinpath(name)
    with open(path, "w") as fp:
        yaml.safe_dump(config, fp, sort_keys=False)
    return path


def base_config(tmp_path: Path, **experiment) -> dict:
    return {
        "meta": {"experiment_name": "trial_00", "seed": 0},
        "experiment": experiment,
        "output": {"out_dir": str(Path(tmp_path).joinpath("out"))},
    }


def sampled_loops(group_id: str, n: int):
    """Loops of length n drawn by the rejection sampler from a hypothesis-chosen seed."""
    spec = get_group(group_id)
    return st.integers(0, 2 ** 32).map(
        lambda s: sample_loop_rejection(spec, n, substream(s, 0, scale=n)).word
    )
