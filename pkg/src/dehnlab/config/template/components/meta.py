from crummycm.validation.types.placeholders.placeholder import KeyPlaceholder as KPH
from crummycm.validation.types.values.element.bool import Bool
from crummycm.validation.types.values.element.numeric import Numeric
from crummycm.validation.types.values.element.text import Text

META = {
    "meta": {
        KPH("dehnlab_dir", exact=True, required=False, populate=True): Text(
            default_value="dehnlab",
            description=(
                "Root directory to store experiment output\n"
                " > e.g. meta:dehnlab_dir: 'dehnlab'"
            ),
        ),
        "experiment_name": Text(
            description=(
                "Name for the experiment being performed\n"
                " > e.g. meta:experiment_name: 'z2_avg_area'"
            )
        ),
        KPH("start_fresh", exact=True, required=False, populate=True): Bool(
            default_value=False,
            description=(
                "Remove a previous experiment directory of the same name\n"
                " > e.g. meta:start_fresh: True"
            ),
        ),
        KPH("seed", exact=True, required=False, populate=True): Numeric(
            default_value=0,
            is_type=int,
            description=(
                "Master seed; every sample draws from its own substream of it\n"
                " > e.g. meta:seed: 42"
            ),
        ),
    }
}
