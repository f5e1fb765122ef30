import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, max_examples=300,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"

# acceptance lines collected by test_acceptance.py
ACCEPTANCE: list[str] = []


@pytest.fixture
def brick():
    from scsim.pgm import read_pgm
    return read_pgm(DATA / "brick64.pgm")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
