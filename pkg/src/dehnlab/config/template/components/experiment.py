from crummycm.validation.types.placeholders.placeholder import KeyPlaceholder as KPH
from crummycm.validation.types.values.compound.multi import Multi
from crummycm.validation.types.values.element.numeric import Numeric
from crummycm.validation.types.values.element.text import Text

from dehnlab.group.metric import DEFAULT_RADIUS_CAP
from dehnlab.walk.heat_kernel import DEFAULT_C_DOUBLE_PRIME
from dehnlab.walk.table import DEFAULT_RELATIVE_FLOOR

KINDS = [
    "sample",
    "fill",
    "avg-area",
    "moments",
    "central-moments",
    "hsc",
    "ratio",
    "shift-test",
    "enumerate",
]

# float fields accept integers in the yaml
FLOAT_FIELDS = ["c_double_prime", "relative_floor"]

EXPERIMENT = {
    "experiment": {
        "kind": Text(
            to_lower=True,
            description=(
                f"What to run, one of {KINDS}\n"
                " > e.g. experiment:kind: 'avg-area'"
            ),
        ),
        "group": Text(
            to_lower=True,
            description=(
                "Catalog group id (z<d>, heis3, fnil2-<k>, filiform4)\n"
                " > e.g. experiment:group: 'heis3'"
            ),
        ),
        KPH("n", exact=True, required=False): Numeric(
            is_type=int, description="loop length for single-scale kinds"
        ),
        KPH("n_list", exact=True, required=False): Multi(element_types=int),
        KPH("t_list", exact=True, required=False): Multi(element_types=int),
        KPH("x_list", exact=True, required=False): Multi(element_types=Text()),
        KPH("m", exact=True, required=False, populate=True): Numeric(
            default_value=1, is_type=int, description="moment order for `moments`"
        ),
        KPH("s", exact=True, required=False): Numeric(is_type=int),
        KPH("t", exact=True, required=False): Numeric(is_type=int),
        KPH("word", exact=True, required=False): Text(
            description="loop to fill, as letters over a A b B ... and '.'"
        ),
        KPH("sampler", exact=True, required=False, populate=True): Text(
            default_value="auto", to_lower=True
        ),
        KPH("fallbacks", exact=True, required=False): Multi(element_types=Text()),
        KPH("samples", exact=True, required=False, populate=True): Numeric(
            default_value=1000,
            is_type=int,
            description="samples per curve point",
        ),
        KPH("area", exact=True, required=False, populate=True): Text(
            default_value="dyadic", to_lower=True
        ),
        KPH("filler", exact=True, required=False, populate=True): Text(
            default_value="dyadic", to_lower=True
        ),
        KPH("arithmetic", exact=True, required=False, populate=True): Text(
            default_value="float", to_lower=True
        ),
        KPH("shift_mode", exact=True, required=False, populate=True): Text(
            default_value="exact", to_lower=True
        ),
        KPH("radius_cap", exact=True, required=False, populate=True): Numeric(
            default_value=DEFAULT_RADIUS_CAP, is_type=int
        ),
        KPH("budget", exact=True, required=False, populate=True): Numeric(
            default_value=8,
            is_type=int,
            description="area budget of the exact search",
        ),
        KPH("block_size", exact=True, required=False, populate=True): Numeric(
            default_value=64, is_type=int
        ),
        KPH("c_double_prime", exact=True, required=False, populate=True): Numeric(
            default_value=DEFAULT_C_DOUBLE_PRIME, is_type=float
        ),
        KPH("relative_floor", exact=True, required=False, populate=True): Numeric(
            default_value=DEFAULT_RELATIVE_FLOOR, is_type=float
        ),
        KPH("workers", exact=True, required=False, populate=True): Numeric(
            default_value=1, is_type=int
        ),
    }
}
