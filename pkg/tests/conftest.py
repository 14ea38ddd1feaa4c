import math

import pytest
from hypothesis import HealthCheck, settings

from lensconvex import build

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SQRT3 = math.sqrt(3.0)

# lines recorded by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def unit_disk():
    return build([(0.0, 0.0)])


@pytest.fixture
def lens1():
    """Lens of center distance 1."""
    return build([(0.0, 0.0), (1.0, 0.0)])


@pytest.fixture
def reuleaux():
    return build([(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
