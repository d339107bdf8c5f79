from dehnlab.config.template.components.experiment import EXPERIMENT
from dehnlab.config.template.components.logging import LOGGING
from dehnlab.config.template.components.meta import META
from dehnlab.config.template.components.output import OUTPUT

TEMPLATE = {}
TEMPLATE = {**TEMPLATE, **META}
TEMPLATE = {**TEMPLATE, **LOGGING}
TEMPLATE = {**TEMPLATE, **EXPERIMENT}
# optional
TEMPLATE = {**TEMPLATE, **OUTPUT}

# keys a config may use, per block; nested blocks map to their own key lists
KNOWN_KEYS = {
    "meta": ["dehnlab_dir", "experiment_name", "start_fresh", "seed"],
    "logging": {
        "console": ["level", "format_str"],
        "file": ["level", "format_str"],
    },
    "experiment": [
        "kind",
        "group",
        "n",
        "n_list",
        "t_list",
        "x_list",
        "m",
        "s",
        "t",
        "word",
        "sampler",
        "fallbacks",
        "samples",
        "area",
        "filler",
        "arithmetic",
        "shift_mode",
        "radius_cap",
        "budget",
        "block_size",
        "c_double_prime",
        "relative_floor",
        "workers",
    ],
    "output": ["out_dir", "write_samples", "write_table"],
}
