"""Total-correlation measures of a bipartite state.

Two scalars are computed side by side: the quantum mutual information
``I = S(rho_S) + S(rho_B) - S(rho_SB)`` and the Hilbert-Schmidt norm of the
correlation matrix ``chi = rho_SB - rho_S (x) rho_B``. The full ``chi`` is
kept as a matrix because energy bookkeeping needs ``Tr[chi H_I]``, which
neither scalar determines.
"""

from dataclasses import dataclass

import numpy as np

from .config import TOL, Tolerances
from .errors import BasisMismatch
from .operators import norm, partial_trace, tensor, trace
from .states import BipartiteState, OperatorBasis, relative_entropy, von_neumann_entropy


def split(rho, dims):
    """Marginals, product and correlation matrix of (stacked) ``rho``."""
    rho_s = partial_trace(rho, dims, keep="S")
    rho_b = partial_trace(rho, dims, keep="B")
    prod = tensor(rho_s, rho_b)
    return rho_s, rho_b, prod, rho - prod


def qmi_array(rho, dims, base=None, tol: Tolerances = TOL):
    rho_s, rho_b, _, _ = split(rho, dims)
    return (
        von_neumann_entropy(rho_s, base, tol)
        + von_neumann_entropy(rho_b, base, tol)
        - von_neumann_entropy(rho, base, tol)
    )


def chi_norm_array(rho, dims):
    return norm(split(rho, dims)[3], "frobenius")


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    matrix: np.ndarray
    d_s: int
    d_b: int

    @property
    def norm2(self) -> float:
        return float(norm(self.matrix, "frobenius"))

    def defects(self) -> dict:
        """Distances from the structural identities every ``chi`` satisfies."""
        dims = (self.d_s, self.d_b)
        m = self.matrix
        return {
            "hermiticity": float(np.max(np.abs(m - m.conj().T))),
            "trace": float(abs(trace(m))),
            "partial_trace_s": float(norm(partial_trace(m, dims, keep="S"))),
            "partial_trace_b": float(norm(partial_trace(m, dims, keep="B"))),
        }


def correlation_matrix(state: BipartiteState) -> CorrelationMatrix:
    chi = state.matrix - state.product
    return CorrelationMatrix(chi, state.d_s, state.d_b)


def chi_norm2(chi) -> float:
    """Hilbert-Schmidt norm ``sqrt(Tr[chi^dagger chi])``.

    Accepts a :class:`CorrelationMatrix` or a :class:`BipartiteState`.
    """
    if isinstance(chi, BipartiteState):
        chi = correlation_matrix(chi)
    return chi.norm2


def is_product(state: BipartiteState, tol: Tolerances = TOL) -> bool:
    return chi_norm2(state) <= tol.zero_chi


def qmi(state: BipartiteState, base=None, tol: Tolerances = TOL) -> float:
    """Quantum mutual information, natural log unless ``base`` is given."""
    return float(
        von_neumann_entropy(state.rho_s, base, tol)
        + von_neumann_entropy(state.rho_b, base, tol)
        - von_neumann_entropy(state.matrix, base, tol)
    )


def qmi_relative_form(state: BipartiteState, base=None, tol: Tolerances = TOL) -> float:
    """The same quantity written as ``S(rho_SB || rho_S (x) rho_B)``."""
    return relative_entropy(state.matrix, state.product, base, tol)


@dataclass(frozen=True, eq=False)
class CovarianceTable:
    """Covariances ``<s_i (x) e_j> - <s_i><e_j>`` in product operator bases.

    Row index runs over ``basis_s``, column index over ``basis_b``.
    """

    coefficients: np.ndarray
    basis_s: OperatorBasis
    basis_b: OperatorBasis

    def reconstruct(self) -> np.ndarray:
        return np.einsum("ab,aij,bkl->ikjl", self.coefficients, self.basis_s.elements, self.basis_b.elements).reshape(
            self.basis_s.dim * self.basis_b.dim, -1
        )

    def energy(self) -> float:
        return float(np.sum(self.coefficients**2))


def _check_basis(basis: OperatorBasis, d: int, name: str):
    if basis.dim != d:
        raise BasisMismatch(f"{name} acts on dimension {basis.dim}, subsystem has {d}")
    if len(basis) != d * d:
        raise BasisMismatch(f"{name} has {len(basis)} elements, a complete basis needs {d * d}")
    gram_defect = np.max(np.abs(basis.gram() - np.eye(len(basis))))
    if gram_defect > 1e-12:
        raise BasisMismatch(f"{name} is not orthonormal (Gram defect {gram_defect:.3e})")


def covariance_table(state: BipartiteState, basis_s: OperatorBasis, basis_b: OperatorBasis) -> CovarianceTable:
    _check_basis(basis_s, state.d_s, "basis_s")
    _check_basis(basis_b, state.d_b, "basis_b")
    s = basis_s.elements
    e = basis_b.elements
    joint = np.einsum("aij,bkl->abikjl", s, e).reshape(len(s), len(e), state.rho.dim, state.rho.dim)
    two_point = np.einsum("abij,ji->ab", joint, state.matrix)
    mean_s = basis_s.coefficients(state.rho_s)
    mean_b = basis_b.coefficients(state.rho_b)
    cov = two_point - np.outer(mean_s, mean_b)
    return CovarianceTable(np.real(cov), basis_s, basis_b)
