"""Quantum mutual information versus the correlation-matrix norm for
bipartite states: measures, exact two-party dynamics and the associated
energy bookkeeping."""

from .config import TOL, Tolerances
from .dynamics import (
    DiscrepancyInterval,
    HamiltonianDecomposition,
    Trajectory,
    chi_norm2_rate,
    chi_norm_rate,
    discrepancy_scan,
    evolve,
    example_hamiltonian,
    proportionality_gap,
    qmi_rate,
    qmi_rate_full,
    sweep,
)
from .measures import (
    CorrelationMatrix,
    CovarianceTable,
    chi_norm2,
    correlation_matrix,
    covariance_table,
    qmi,
)
from .operators import hermitian_eig, matrix_function, matrix_log, norm, partial_trace, tensor
from .states import (
    BipartiteState,
    DensityMatrix,
    OperatorBasis,
    ThermalReference,
    make_state,
    pauli_basis,
    relative_entropy,
    thermal_state,
    von_neumann_entropy,
)
from .thermo import (
    HeatLedger,
    area_law_bound,
    binding_energy,
    du_decomposition_norm,
    du_decomposition_qmi,
    effective_hamiltonian,
    heat_ledger,
    integrated_qmi_identity,
)

__version__ = "0.1.0"
