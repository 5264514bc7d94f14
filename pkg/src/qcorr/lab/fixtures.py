"""States and reference data for the three experiments."""

from importlib import resources

import numpy as np

from ..dynamics import example_hamiltonian
from ..states import BipartiteState, make_state

# computational basis, S-major: index = 2 * i_S + i_B
EXAMPLE2_RHO0 = np.array(
    [
        [0.403041, -0.181049 - 0.038525j, 0.012466 + 0.12214j, -0.044462 + 0.058024j],
        [-0.181049 + 0.038525j, 0.314013, 0.025204 - 0.101876j, 0.053753 + 0.030605j],
        [0.012466 - 0.12214j, 0.025204 + 0.101876j, 0.065777, -0.018686 + 0.024092j],
        [-0.044462 - 0.058024j, 0.053753 - 0.030605j, -0.018686 - 0.024092j, 0.217169],
    ]
)
EXAMPLE2_RHO0.setflags(write=False)

# the two intervals singled out in the time-series figure
HIGHLIGHTED_INTERVALS = ((4.371, 4.432), (7.177, 7.218))

EXAMPLE1_ARGMIN = 0.64


def example1_chi() -> np.ndarray:
    """Constant correlation matrix ``(|1,0><0,1| + |0,1><1,0|) / 10``."""
    chi = np.zeros((4, 4), dtype=complex)
    chi[2, 1] = chi[1, 2] = 0.1
    return chi


def example1_rho_s(x: float) -> np.ndarray:
    return np.array([[x, 0.1], [0.1, 1.0 - x]], dtype=complex)


def example1_rho_b(x: float) -> np.ndarray:
    return np.array([[1.0 - x * x, 0.1], [0.1, x * x]], dtype=complex)


def example1_matrix(x: float) -> np.ndarray:
    return np.kron(example1_rho_s(x), example1_rho_b(x)) + example1_chi()


def example1_state(x: float) -> BipartiteState:
    return make_state(example1_matrix(x), (2, 2))


def example2_state() -> BipartiteState:
    return make_state(EXAMPLE2_RHO0, (2, 2))


example2_hamiltonian = example_hamiltonian


def reference_intervals():
    text = resources.files(__package__).joinpath("data/reference_intervals.txt").read_text()
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            a, b = line.split()
            rows.append((float(a), float(b)))
    return rows
