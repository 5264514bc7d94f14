"""Density matrices, entropies, qubit operator bases and Gibbs states."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    TraceNotOne,
    UnsupportedDimension,
)
from .operators import dagger, hermiticity_defect, partial_trace, tensor, trace


class ValidationReport(NamedTuple):
    hermiticity_defect: float
    min_eigenvalue: float
    trace_deviation: float


def validation_report(matrix) -> ValidationReport:
    m = np.asarray(matrix)
    w = np.linalg.eigvalsh(0.5 * (m + dagger(m)))
    return ValidationReport(
        float(hermiticity_defect(m)),
        float(w[0]),
        float(abs(np.trace(m) - 1.0)),
    )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated Hermitian, positive semidefinite, unit-trace matrix.

    Build through :func:`density_matrix` (or :func:`make_state` for the
    bipartite case) rather than calling the constructor directly.
    """

    matrix: np.ndarray
    report: ValidationReport = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def density_matrix(matrix, tol: Tolerances = TOL) -> DensityMatrix:
    """Validate ``matrix`` and wrap it.

    Raises:
        NotHermitian, NotPositive, TraceNotOne: each carries the measured
            violation.
    """
    m = np.array(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got shape {m.shape}")
    report = validation_report(m)
    if report.hermiticity_defect > tol.herm:
        raise NotHermitian(report.hermiticity_defect)
    if report.min_eigenvalue < -tol.psd:
        raise NotPositive(report.min_eigenvalue)
    if report.trace_deviation > tol.trace:
        raise TraceNotOne(report.trace_deviation)
    m.setflags(write=False)
    return DensityMatrix(m, report)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A density matrix on ``d_s * d_b`` with a declared tensor split."""

    rho: DensityMatrix
    d_s: int
    d_b: int

    def __post_init__(self):
        if self.d_s * self.d_b != self.rho.dim:
            raise DimensionMismatch(f"d_s * d_b = {self.d_s * self.d_b} but state has dim {self.rho.dim}")

    @property
    def matrix(self) -> np.ndarray:
        return self.rho.matrix

    @property
    def dims(self) -> tuple:
        return (self.d_s, self.d_b)

    @cached_property
    def rho_s(self) -> np.ndarray:
        return partial_trace(self.matrix, self.dims, keep="S")

    @cached_property
    def rho_b(self) -> np.ndarray:
        return partial_trace(self.matrix, self.dims, keep="B")

    @cached_property
    def product(self) -> np.ndarray:
        """The uncorrelated counterpart ``rho_S (x) rho_B``."""
        return tensor(self.rho_s, self.rho_b)


def make_state(matrix, dims=(2, 2), tol: Tolerances = TOL) -> BipartiteState:
    d_s, d_b = dims
    return BipartiteState(density_matrix(matrix, tol), int(d_s), int(d_b))


def product_state(rho_s, rho_b, tol: Tolerances = TOL) -> BipartiteState:
    rho_s = np.asarray(rho_s)
    rho_b = np.asarray(rho_b)
    return make_state(tensor(rho_s, rho_b), (rho_s.shape[0], rho_b.shape[0]), tol)


def _matrix(x):
    if isinstance(x, BipartiteState):
        return x.matrix
    if isinstance(x, DensityMatrix):
        return x.matrix
    return np.asarray(x)


def _xlogx(p, base, tol):
    keep = p > tol.supp
    safe = np.where(keep, p, 1.0)
    out = np.where(keep, p * np.log(safe), 0.0)
    if base is not None:
        out = out / np.log(base)
    return out


def entropy_of_spectrum(p, base=None, tol: Tolerances = TOL):
    """``-sum p log p`` over the last axis with ``0 log 0 = 0``."""
    return -np.sum(_xlogx(np.asarray(p), base, tol), axis=-1)


def von_neumann_entropy(rho, base=None, tol: Tolerances = TOL):
    """``-Tr[rho log rho]``; natural log unless ``base`` is given.

    Accepts a :class:`DensityMatrix`, :class:`BipartiteState` or a raw array
    (stacks of matrices give one entropy per matrix).
    """
    return entropy_of_spectrum(np.linalg.eigvalsh(_matrix(rho)), base, tol)


def relative_entropy(rho, sigma, base=None, tol: Tolerances = TOL) -> float:
    """``Tr[rho log rho] - Tr[rho log sigma]``.

    Returns ``math.inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``.
    """
    a = _matrix(rho)
    b = _matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    wa = np.linalg.eigvalsh(a)
    wb, vb = np.linalg.eigh(b)
    # diag of rho in sigma's eigenbasis: weight rho puts on each sigma eigenvector
    weights = np.real(np.einsum("ji,jk,ki->i", vb.conj(), a, vb))
    kernel = wb <= tol.supp
    if np.sum(weights[kernel]) > tol.supp:
        return np.inf
    log_b = np.where(kernel, 0.0, np.log(np.where(kernel, 1.0, wb)))
    cross = np.sum(weights * log_b)
    if base is not None:
        cross = cross / np.log(base)
    return float(-entropy_of_spectrum(wa, base, tol) - cross)


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """An orthonormal Hermitian operator basis, ``Tr[s_i s_j] = delta_ij``."""

    elements: np.ndarray
    labels: tuple

    @property
    def dim(self) -> int:
        return self.elements.shape[-1]

    def __len__(self):
        return len(self.elements)

    def gram(self) -> np.ndarray:
        return np.real(np.einsum("aij,bji->ab", self.elements, self.elements))

    def coefficients(self, m) -> np.ndarray:
        """``Tr[M s_i]`` for each element; real for Hermitian ``M``."""
        return np.einsum("ij,aji->a", np.asarray(m), self.elements)

    def reconstruct(self, coefficients) -> np.ndarray:
        return np.einsum("a,aij->ij", np.asarray(coefficients), self.elements)


PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_basis(d: int = 2) -> OperatorBasis:
    """Normalized Paulis ``{I, X, Y, Z} / sqrt(2)``; only ``d = 2`` exists."""
    if d != 2:
        raise UnsupportedDimension(f"Pauli basis is defined for qubits only, got d={d}")
    labels = ("I", "X", "Y", "Z")
    elements = np.stack([PAULI[k] for k in labels]) / np.sqrt(2.0)
    elements.setflags(write=False)
    return OperatorBasis(elements, labels)


def thermal_state(h, beta: float, tol: Tolerances = TOL) -> DensityMatrix:
    """Gibbs state ``exp(-beta H) / Z`` for Hermitian ``H`` and ``beta >= 0``."""
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    w, v = np.linalg.eigh(np.asarray(h))
    # shift by the ground energy so large beta does not underflow Z
    boltz = np.exp(-beta * (w - w[0]))
    p = boltz / boltz.sum()
    return density_matrix((v * p) @ v.conj().T, tol)


@dataclass(frozen=True, eq=False)
class ThermalReference:
    beta: float
    rho_star_s: DensityMatrix
    rho_star_b: DensityMatrix

    @classmethod
    def from_hamiltonians(cls, h_s, h_b, beta: float):
        return cls(float(beta), thermal_state(h_s, beta), thermal_state(h_b, beta))

    @property
    def product(self) -> np.ndarray:
        return tensor(self.rho_star_s.matrix, self.rho_star_b.matrix)

    def state(self) -> BipartiteState:
        return make_state(self.product, (self.rho_star_s.dim, self.rho_star_b.dim))


def purity(rho):
    m = _matrix(rho)
    return np.real(trace(m @ m))
