import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from starcert import DiskGrid

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def small_grid():
    return DiskGrid(64, 256, 0.999)


@pytest.fixture(scope="session")
def medium_grid():
    return DiskGrid(128, 512, 1 - 1e-4)


def random_disk_points(rng, count, radius=0.95):
    r = radius * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


ACCEPTANCE_LINES = {}


def record_acceptance(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
