import numpy as np
import pytest

from chirogeom import PulsePair, generate_synthetic, sphere_quadrature
from chirogeom.checks import pulse_suite


@pytest.fixture(scope="session")
def grid():
    return sphere_quadrature(6, 12)


@pytest.fixture(scope="session")
def sym_set(grid):
    return generate_synthetic(1, 2, True, grid, k=1.0)


@pytest.fixture(scope="session")
def asym_set(grid):
    return generate_synthetic(103, 2, False, grid, k=1.3)


@pytest.fixture(params=["sym", "asym"])
def any_set(request, sym_set, asym_set):
    return sym_set if request.param == "sym" else asym_set


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture(params=["LinCirc", "CircLin", "CircCirc"])
def pulses(request):
    make = {
        "LinCirc": PulsePair.lin_circ,
        "CircLin": PulsePair.circ_lin,
        "CircCirc": PulsePair.circ_circ,
    }[request.param]
    return make(1, amp_pump_1=1.2, amp_pump_2=0.8, amp_probe_1=0.9, amp_probe_2=1.1,
                omega1=1.0, omega2=0.35, tau=1.7)


@pytest.fixture
def suite_pulses(rng):
    return pulse_suite(rng)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
