#!/usr/bin/env python
import hashlib
import json
import logging
import os
import shutil
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import crummycm as ccm
import yaml

from dehnlab.config.template.components.experiment import FLOAT_FIELDS, KINDS
from dehnlab.config.template.template import KNOWN_KEYS, TEMPLATE
from dehnlab.errors import ConfigError, InvalidWordError
from dehnlab.estimate.area import return_available_area_functions
from dehnlab.group.catalog import get_group, is_loop, return_available_groups
from dehnlab.group.words import parse_word
from dehnlab.log.dl_logging import config_logger
from dehnlab.walk.samplers import return_available_samplers

WORKERS_ENV = "DEHNLAB_WORKERS"

# nothing here changes the statistics of a run
HASH_IGNORE_KEYS = [
    "output",
    "logging",
    "start_fresh",
    "dehnlab_dir",
    "experiment_name",
    "workers",
]

SCALE_KINDS = ["avg-area", "central-moments", "hsc", "ratio"]
LENGTH_KINDS = ["sample", "moments", "shift-test", "enumerate"]
FILLERS = ["direct", "dyadic"]
ARITHMETIC = ["float", "rational"]
SHIFT_MODES = ["exact", "sampled"]

logger = logging.getLogger("config_logger")


def make_hash(o: Dict[str, Any], ignore_keys: Any = None) -> str:
    """sha256 of the canonical json of ``o``, leaving out ``ignore_keys`` at every level."""

    def _strip(v):
        if isinstance(v, dict):
            return {
                str(k): _strip(x)
                for k, x in v.items()
                if not ignore_keys or k not in ignore_keys
            }
        if isinstance(v, (list, tuple)):
            return [_strip(x) for x in v]
        return v

    canon = json.dumps(_strip(o), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _key_lines(node, known, path: List[str], lines: Dict[str, int]):
    if not isinstance(node, yaml.MappingNode):
        return
    for key_node, value_node in node.value:
        key = key_node.value
        full = ":".join(path + [key])
        line = key_node.start_mark.line + 1
        allowed = list(known.keys()) if isinstance(known, dict) else list(known)
        if key not in allowed:
            raise ConfigError(
                f"line {line}: unknown key '{full}', options are {allowed}"
            )
        lines[full] = line
        if isinstance(known, dict):
            _key_lines(value_node, known[key], path + [key], lines)


def _load(main_path) -> Tuple[dict, Dict[str, int]]:
    try:
        text = Path(main_path).read_text()
    except OSError as e:
        raise ConfigError(f"config file {main_path} could not be read: {e}")
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"line {mark.line + 1}: " if mark is not None else ""
        raise ConfigError(f"{where}config is not valid yaml ({e})")
    if not isinstance(raw, dict):
        raise ConfigError(f"line 1: config must be a mapping, got {type(raw).__name__}")
    lines: Dict[str, int] = {}
    _key_lines(node, KNOWN_KEYS, [], lines)
    return raw, lines


def _fail(lines: Dict[str, int], field: str, msg: str):
    line = lines.get(field)
    where = f"line {line}: " if line is not None else ""
    raise ConfigError(f"{where}{field}: {msg}")


def _apply_overrides(raw: dict, overrides: Optional[dict], lines: Dict[str, int]):
    raw.setdefault("meta", {})
    raw.setdefault("logging", {})
    raw.setdefault("experiment", {})
    raw.setdefault("output", {})
    env_workers = os.environ.get(WORKERS_ENV)
    if env_workers:
        try:
            raw["experiment"]["workers"] = int(env_workers)
        except ValueError:
            raise ConfigError(
                f"experiment:workers: {WORKERS_ENV}={env_workers} is not an integer"
            )
        lines.pop("experiment:workers", None)
    for name, value in (overrides or {}).items():
        if value is None:
            continue
        if name == "seed":
            raw["meta"]["seed"] = int(value)
            lines.pop("meta:seed", None)
        elif name == "workers":
            raw["experiment"]["workers"] = int(value)
            lines.pop("experiment:workers", None)
        elif name == "out_dir":
            raw["output"]["out_dir"] = str(value)
            lines.pop("output:out_dir", None)
        else:
            raise ConfigError(f"override {name} not available in options ['seed', 'workers', 'out_dir']")
    for name in FLOAT_FIELDS:
        v = raw["experiment"].get(name)
        if isinstance(v, int) and not isinstance(v, bool):
            raw["experiment"][name] = float(v)


def _check_increasing(lines, field: str, values: List[int], lowest: int):
    if not values:
        _fail(lines, field, "must hold at least one value")
    if values[0] < lowest:
        _fail(lines, field, f"values must be >= {lowest}, got {values}")
    if any(b <= a for a, b in zip(values, values[1:])):
        _fail(lines, field, f"values must be strictly increasing, got {values}")


def _check_experiment(exp: dict, lines: Dict[str, int]):
    kind = exp["kind"]
    if kind not in KINDS:
        _fail(lines, "experiment:kind", f"kind {kind} not available in options {KINDS}")
    if exp["group"] not in return_available_groups():
        _fail(
            lines,
            "experiment:group",
            f"group {exp['group']} not available in options {return_available_groups()}",
        )
    spec = get_group(exp["group"])

    samplers = [exp["sampler"]] + list(exp.get("fallbacks") or [])
    for name in samplers:
        if name not in return_available_samplers():
            field = "experiment:sampler" if name == exp["sampler"] else "experiment:fallbacks"
            _fail(lines, field, f"sampler {name} not available in options {return_available_samplers()}")

    areas = list(return_available_area_functions().keys()) + ["bracket"]
    if exp["area"] not in areas:
        _fail(lines, "experiment:area", f"area {exp['area']} not available in options {areas}")
    if exp["filler"] not in FILLERS:
        _fail(lines, "experiment:filler", f"filler {exp['filler']} not available in options {FILLERS}")
    if exp["arithmetic"] not in ARITHMETIC:
        _fail(lines, "experiment:arithmetic", f"arithmetic {exp['arithmetic']} not available in options {ARITHMETIC}")
    if exp["shift_mode"] not in SHIFT_MODES:
        _fail(lines, "experiment:shift_mode", f"mode {exp['shift_mode']} not available in options {SHIFT_MODES}")
    for name in ("samples", "workers", "radius_cap", "block_size", "budget"):
        if exp[name] < 1:
            _fail(lines, f"experiment:{name}", f"must be >= 1, got {exp[name]}")
    if exp["c_double_prime"] <= 0:
        _fail(lines, "experiment:c_double_prime", f"must be > 0, got {exp['c_double_prime']}")
    if not 0 <= exp["relative_floor"] < 1:
        _fail(lines, "experiment:relative_floor", f"must be in [0, 1), got {exp['relative_floor']}")

    if kind in SCALE_KINDS:
        if "n_list" not in exp:
            _fail(lines, "experiment:n_list", f"is required for kind {kind}")
        _check_increasing(lines, "experiment:n_list", list(exp["n_list"]), 1)
    if kind in LENGTH_KINDS:
        if "n" not in exp:
            _fail(lines, "experiment:n", f"is required for kind {kind}")
        lowest = 0 if kind == "enumerate" else 1
        if exp["n"] < lowest:
            _fail(lines, "experiment:n", f"must be >= {lowest}, got {exp['n']}")

    if kind == "moments":
        if "t_list" not in exp:
            _fail(lines, "experiment:t_list", "is required for kind moments")
        _check_increasing(lines, "experiment:t_list", list(exp["t_list"]), 1)
        if exp["t_list"][-1] > exp["n"]:
            _fail(lines, "experiment:t_list", f"times must be <= n={exp['n']}, got {list(exp['t_list'])}")
        if exp["m"] < 1:
            _fail(lines, "experiment:m", f"must be >= 1, got {exp['m']}")
    elif kind == "shift-test":
        for name in ("s", "t"):
            if name not in exp:
                _fail(lines, f"experiment:{name}", "is required for kind shift-test")
        if not 0 <= exp["s"] < exp["t"] <= exp["n"]:
            _fail(
                lines,
                "experiment:s",
                f"need 0 <= s < t <= n, got s={exp['s']}, t={exp['t']}, n={exp['n']}",
            )
    elif kind == "ratio":
        if not exp.get("x_list"):
            _fail(lines, "experiment:x_list", "is required for kind ratio")
        for x in exp["x_list"]:
            try:
                parse_word(x, spec.generator_count)
            except InvalidWordError as e:
                _fail(lines, "experiment:x_list", str(e))
    elif kind == "fill":
        if "word" not in exp:
            _fail(lines, "experiment:word", "is required for kind fill")
        try:
            w = parse_word(exp["word"], spec.generator_count)
        except InvalidWordError as e:
            _fail(lines, "experiment:word", str(e))
        if not is_loop(spec, w):
            _fail(lines, "experiment:word", f"{exp['word']} is not a loop in {spec.id}")


def _maybe_create_dir(root_dir: Path, wipe_dirs: bool, config_hash: str):
    if root_dir.exists():
        if wipe_dirs:
            shutil.rmtree(root_dir)
            logger.info(f"directory {root_dir} removed")
        else:
            record = root_dir.joinpath("result.json")
            if record.exists():
                try:
                    old = json.loads(record.read_text()).get("config_hash")
                except (json.JSONDecodeError, AttributeError):
                    old = None
                if old is not None and old != config_hash:
                    raise ConfigError(
                        f"output:out_dir: {root_dir} holds results of another config"
                        f" ({old[:12]}). Use another directory or meta:start_fresh: True"
                    )

    if not root_dir.exists():
        root_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"directory {root_dir} created")


def create_configs(main_path: str, overrides: Optional[dict] = None) -> dict:
    raw, lines = _load(main_path)
    _apply_overrides(raw, overrides, lines)

    # parse + validate
    try:
        config_dict = ccm.validate(raw, TEMPLATE)
    except (ValueError, TypeError, KeyError) as e:
        raise ConfigError(f"{main_path}: {e}")

    _check_experiment(config_dict["experiment"], lines)

    config_dict["config_hash"] = make_hash(config_dict, HASH_IGNORE_KEYS + ["config_hash"])

    out_dir = config_dict["output"].get("out_dir")
    if not out_dir:
        out_dir = Path(config_dict["meta"]["dehnlab_dir"]).joinpath(
            config_dict["meta"]["experiment_name"]
        )
    out_dir = Path(out_dir)
    _maybe_create_dir(out_dir, config_dict["meta"]["start_fresh"], config_dict["config_hash"])
    config_dict["output"]["out_dir"] = str(out_dir)

    c_logger = config_logger(out_dir, config_dict["logging"], "config")
    c_logger.info(
        f"config {main_path} validated, hash {config_dict['config_hash'][:12]},"
        f" output in {out_dir}"
    )
    return config_dict
