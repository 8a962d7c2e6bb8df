import pytest
from hypothesis import HealthCheck, settings

from bangcalc.surface import parse

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# shorthand terms used across the test modules
DELTA = r"(\x.x !x)"
OMEGA_BANG = rf"{DELTA} !{DELTA}"
R = r"((\x.x) !z)"


@pytest.fixture
def p():
    return parse
