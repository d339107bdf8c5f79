import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# test modules import their helpers with `from util import ...`
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "dehnlab", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("dehnlab")
