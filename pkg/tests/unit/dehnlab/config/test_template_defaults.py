import crummycm as ccm
import pytest

from dehnlab.config.template.components.experiment import EXPERIMENT
from dehnlab.config.template.components.logging import LOGGING
from dehnlab.config.template.components.meta import META
from dehnlab.config.template.components.output import OUTPUT

# errors crummycm raises for a missing required key or a value of the wrong type
INVALID = (ValueError, TypeError, KeyError)


def _check(config, expected, template):
    if isinstance(expected, dict):
        assert ccm.validate(config, template) == expected
    else:
        with pytest.raises(INVALID):
            ccm.validate(config, template)


ex_meta = {
    "missing_exp_name": ({"meta": {"seed": 2}}, ValueError),
    "bare_minimum": (
        {"meta": {"experiment_name": "trial_01"}},
        {
            "meta": {
                "dehnlab_dir": "dehnlab",
                "experiment_name": "trial_01",
                "start_fresh": False,
                "seed": 0,
            }
        },
    ),
    "set_seed": (
        {"meta": {"experiment_name": "trial_02", "seed": 7, "start_fresh": True}},
        {
            "meta": {
                "dehnlab_dir": "dehnlab",
                "experiment_name": "trial_02",
                "start_fresh": True,
                "seed": 7,
            }
        },
    ),
    "seed_string": ({"meta": {"experiment_name": "trial_02", "seed": "seven"}}, TypeError),
}


@pytest.mark.parametrize("config,expected", ex_meta.values(), ids=list(ex_meta.keys()))
def test_meta(config, expected):
    _check(config, expected, META)


ex_logging = {
    "minimal_00": (
        {"logging": {}},
        {
            "logging": {
                "console": {
                    "level": "critical",
                    "format_str": "%(name)-12s: %(levelname)-8s %(message)s",
                },
                "file": {
                    "level": "critical",
                    "format_str": "%(filename)s:%(lineno)s - %(funcName)20s()][%(levelname)-8s]: %(message)s",
                },
            }
        },
    ),
    "upper_level": (
        {"logging": {"console": {"level": "INFO"}}},
        {
            "logging": {
                "console": {
                    "level": "info",
                    "format_str": "%(name)-12s: %(levelname)-8s %(message)s",
                },
                "file": {
                    "level": "critical",
                    "format_str": "%(filename)s:%(lineno)s - %(funcName)20s()][%(levelname)-8s]: %(message)s",
                },
            }
        },
    ),
    "bad_level": ({"logging": {"console": {"level": "loud"}}}, ValueError),
}


@pytest.mark.parametrize("config,expected", ex_logging.values(), ids=list(ex_logging.keys()))
def test_logging(config, expected):
    _check(config, expected, LOGGING)


EXPERIMENT_DEFAULTS = {
    "m": 1,
    "sampler": "auto",
    "samples": 1000,
    "area": "dyadic",
    "filler": "dyadic",
    "arithmetic": "float",
    "shift_mode": "exact",
    "radius_cap": 32,
    "budget": 8,
    "block_size": 64,
    "c_double_prime": 8.0,
    "relative_floor": 1e-15,
    "workers": 1,
}

ex_experiment = {
    "missing_group": ({"experiment": {"kind": "enumerate"}}, ValueError),
    "minimal": (
        {"experiment": {"kind": "enumerate", "group": "z2"}},
        {"experiment": {"kind": "enumerate", "group": "z2", **EXPERIMENT_DEFAULTS}},
    ),
    "lowered": (
        {"experiment": {"kind": "AVG-AREA", "group": "HEIS3", "n_list": [4, 8], "area": "Bracket"}},
        {
            "experiment": {
                "kind": "avg-area",
                "group": "heis3",
                "n_list": [4, 8],
                **dict(EXPERIMENT_DEFAULTS, area="bracket"),
            }
        },
    ),
    "n_float": ({"experiment": {"kind": "sample", "group": "z2", "n": 2.5}}, TypeError),
}


@pytest.mark.parametrize("config,expected", ex_experiment.values(), ids=list(ex_experiment.keys()))
def test_experiment(config, expected):
    _check(config, expected, EXPERIMENT)


ex_output = {
    "empty": ({"output": {}}, {"output": {"write_samples": True, "write_table": True}}),
    "out_dir": (
        {"output": {"out_dir": "runs/z2", "write_table": False}},
        {"output": {"out_dir": "runs/z2", "write_samples": True, "write_table": False}},
    ),
}


@pytest.mark.parametrize("config,expected", ex_output.values(), ids=list(ex_output.keys()))
def test_output(config, expected):
    _check(config, expected, OUTPUT)
