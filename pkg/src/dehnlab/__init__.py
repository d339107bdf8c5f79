from importlib.metadata import PackageNotFoundError, version


try:
    __version__ = version("dehnlab")
except PackageNotFoundError:
    __version__ = "Please install this project with setup.py (e.g.`pip install ./dehnlab/` or `pip install -e ./dehnlab/`)"


# groups
from dehnlab.group.catalog import get_group, eval_word, is_loop
from dehnlab.group.words import parse_word, format_word

# walks
from dehnlab.walk.samplers import sample_loop_rejection
from dehnlab.walk.bridge import sample_loop_bridge, sample_loop_projected
from dehnlab.walk.table import return_tables
from dehnlab.walk.heat_kernel import hsc_check

# filling
from dehnlab.fill.collect import fill_word
from dehnlab.fill.dyadic import dyadic_fill
from dehnlab.fill.certificate import verify_certificate

# estimate
from dehnlab.estimate.area import avg_area_curve
from dehnlab.estimate.fit import exponent_fit

# Config + run
from dehnlab.config.create_configs import create_configs
from dehnlab.run.run_experiment import run
