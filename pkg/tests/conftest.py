import numpy as np
import pytest

from qcorr.dynamics import example_hamiltonian, sweep
from qcorr.lab import fixtures
from qcorr.states import ThermalReference

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def h_example():
    return example_hamiltonian()


@pytest.fixture(scope="session")
def fixture_state():
    return fixtures.example2_state()


@pytest.fixture(scope="session")
def example2_traj(fixture_state, h_example):
    return sweep(fixture_state, h_example, 4.0, 8.0, 4e-5)


@pytest.fixture(scope="session")
def thermal_ref(h_example):
    return ThermalReference.from_hamiltonians(h_example.h_s, h_example.h_b, 1.0)


@pytest.fixture(scope="session")
def thermal_traj(thermal_ref, h_example):
    return sweep(thermal_ref.state(), h_example, 0.0, 2.0, 4e-5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
