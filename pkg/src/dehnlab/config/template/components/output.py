from crummycm.validation.types.placeholders.placeholder import KeyPlaceholder as KPH
from crummycm.validation.types.values.element.bool import Bool
from crummycm.validation.types.values.element.text import Text

OUTPUT = {
    "output": {
        KPH("out_dir", exact=True, required=False): Text(
            description=(
                "Directory for result files, defaults to <dehnlab_dir>/<experiment_name>\n"
                " > e.g. output:out_dir: 'runs/z2'"
            )
        ),
        KPH("write_samples", exact=True, required=False, populate=True): Bool(
            default_value=True,
            description="write the sampled loops of a `sample` run to samples.txt",
        ),
        KPH("write_table", exact=True, required=False, populate=True): Bool(
            default_value=True,
            description="write the last probability table of `hsc` and `ratio` runs to table.csv",
        ),
    }
}
