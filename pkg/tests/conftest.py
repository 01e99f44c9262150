import random

import pytest
from hypothesis import HealthCheck, settings

from skewtower.scheduler import schedule_example_a
from skewtower.tower import Tower

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# (number, title, passed) rows appended by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture(scope="session")
def tower23():
    return Tower(schedule_example_a(2, (2, 3)))


@pytest.fixture(scope="session")
def tower32():
    return Tower(schedule_example_a(3, (3, 2)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title}")
