"""Closed two-party dynamics and the instantaneous rates of both
correlation measures.

Evolution is exact: the total Hamiltonian is diagonalized once and every
time point is reached by applying phases in its eigenbasis. Rates are the
analytic expressions

    dI/dt        = i Tr[[H_I, chi] log(rho_S (x) rho_B)]
    d|chi|_2^2/dt = 2i Tr[[H, chi] rho_S (x) rho_B] - 2 Tr[d(rho_S (x) rho_B)/dt chi]

so sign changes are located without finite-difference artifacts.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional

import numpy as np

from .config import TOL, Tolerances
from .errors import GridTooLarge, InvalidState, SingularMarginal, ZeroChi
from .measures import qmi_array, split
from .operators import (
    HermitianEig,
    commutator,
    dagger,
    hermitian_eig,
    hermiticity_defect,
    log_frechet,
    norm,
    partial_trace,
    tensor,
    trace_product,
)
from .states import PAULI, BipartiteState, make_state, von_neumann_entropy

# imaginary parts of traces that should be real are checked against this
_IMAG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class HamiltonianDecomposition:
    """Local terms, interaction and total ``H = H_S (x) 1 + 1 (x) H_B + H_I``."""

    h_s: np.ndarray
    h_b: np.ndarray
    h_i: np.ndarray
    h_total: np.ndarray = field(init=False)

    def __post_init__(self):
        h_s = np.asarray(self.h_s, dtype=complex)
        h_b = np.asarray(self.h_b, dtype=complex)
        h_i = np.asarray(self.h_i, dtype=complex)
        d_s, d_b = h_s.shape[0], h_b.shape[0]
        if h_i.shape != (d_s * d_b, d_s * d_b):
            raise ValueError(f"interaction shape {h_i.shape} does not match local dims ({d_s}, {d_b})")
        for m in (h_s, h_b, h_i):
            hermitian_eig(m)  # raises on non-Hermitian parts
        total = np.kron(h_s, np.eye(d_b)) + np.kron(np.eye(d_s), h_b) + h_i
        object.__setattr__(self, "h_s", h_s)
        object.__setattr__(self, "h_b", h_b)
        object.__setattr__(self, "h_i", h_i)
        object.__setattr__(self, "h_total", total)

    @property
    def dims(self):
        return (self.h_s.shape[0], self.h_b.shape[0])

    @cached_property
    def eig(self) -> HermitianEig:
        return hermitian_eig(self.h_total)

    def propagator(self, t) -> np.ndarray:
        w, v = self.eig
        return (v * np.exp(-1j * w * t)) @ dagger(v)

    def scaled_interaction(self, factor: float) -> "HamiltonianDecomposition":
        return HamiltonianDecomposition(self.h_s, self.h_b, factor * self.h_i)


def example_hamiltonian(interaction_scale: float = 1.0) -> HamiltonianDecomposition:
    """Two qubits: ``H_S = Z``, ``H_B = -Z/2``,
    ``H_I = 5/2 XX + 1/2 YY + 9/2 ZZ`` (optionally scaled)."""
    x, y, z = PAULI["X"], PAULI["Y"], PAULI["Z"]
    h_i = 2.5 * np.kron(x, x) + 0.5 * np.kron(y, y) + 4.5 * np.kron(z, z)
    return HamiltonianDecomposition(z, -0.5 * z, interaction_scale * h_i)


def evolve_array(rho0, h: HamiltonianDecomposition, times) -> np.ndarray:
    """``U(t) rho0 U(t)^dagger`` for each ``t`` (scalar or 1-D array)."""
    w, v = h.eig
    times = np.asarray(times, dtype=float)
    rho_eig = dagger(v) @ np.asarray(rho0) @ v
    gaps = w[:, None] - w[None, :]
    phases = np.exp(-1j * gaps * times[..., None, None])
    return v @ (rho_eig * phases) @ dagger(v)


def evolve(state0: BipartiteState, h: HamiltonianDecomposition, t: float, tol: Tolerances = TOL) -> BipartiteState:
    return make_state(evolve_array(state0.matrix, h, t), state0.dims, tol)


def derivatives(rho, h: HamiltonianDecomposition, dims):
    """Time derivatives of ``rho``, its marginals, their product and ``chi``
    under ``d rho/dt = -i [H, rho]``. Works on stacks."""
    rho_s, rho_b, prod, chi = split(rho, dims)
    rho_dot = -1j * commutator(h.h_total, rho)
    rho_s_dot = partial_trace(rho_dot, dims, keep="S")
    rho_b_dot = partial_trace(rho_dot, dims, keep="B")
    prod_dot = tensor(rho_s_dot, rho_b) + tensor(rho_s, rho_b_dot)
    return {
        "rho_s": rho_s,
        "rho_b": rho_b,
        "product": prod,
        "chi": chi,
        "rho_dot": rho_dot,
        "rho_s_dot": rho_s_dot,
        "rho_b_dot": rho_b_dot,
        "product_dot": prod_dot,
        "chi_dot": rho_dot - prod_dot,
    }


def _real(x, what):
    x = np.asarray(x)
    bad = np.max(np.abs(x.imag), initial=0.0)
    if bad > _IMAG_TOL * max(1.0, float(np.max(np.abs(x.real), initial=0.0))):
        raise ArithmeticError(f"{what} has imaginary residue {bad:.3e}")
    return x.real


def _restricted_log(m, strict, tol):
    """Support-restricted log and the support projector of stacked ``m``."""
    w, v = np.linalg.eigh(m)
    small = w <= tol.supp
    if np.any(small) and strict:
        raise SingularMarginal(np.min(w))
    logw = np.where(small, 0.0, np.log(np.where(small, 1.0, w)))
    proj = np.where(small, 0.0, 1.0)
    return (v * logw[..., None, :]) @ dagger(v), (v * proj[..., None, :]) @ dagger(v)


def product_log(rho_s, rho_b, strict=False, tol: Tolerances = TOL):
    """``log(rho_S (x) rho_B)`` on its support."""
    log_s, p_s = _restricted_log(rho_s, strict, tol)
    log_b, p_b = _restricted_log(rho_b, strict, tol)
    return tensor(log_s, p_b) + tensor(p_s, log_b)


def qmi_rate_array(rho, h: HamiltonianDecomposition, dims, base=None, strict=False, tol: Tolerances = TOL):
    rho_s, rho_b, _, chi = split(rho, dims)
    log_prod = product_log(rho_s, rho_b, strict, tol)
    rate = _real(1j * trace_product(commutator(h.h_i, chi), log_prod), "QMI rate")
    if base is not None:
        rate = rate / math.log(base)
    return rate


def chi_norm2_rate_array(rho, h: HamiltonianDecomposition, dims):
    d = derivatives(rho, h, dims)
    first = 2j * trace_product(commutator(h.h_total, d["chi"]), d["product"])
    second = -2.0 * trace_product(d["product_dot"], d["chi"])
    return _real(first + second, "chi norm rate")


def qmi_rate(state: BipartiteState, h: HamiltonianDecomposition, base=None, strict=False, tol: Tolerances = TOL) -> float:
    """``dI/dt`` from the interaction commutator.

    Rank-deficient marginals use the support-restricted log unless
    ``strict`` is set, in which case :class:`SingularMarginal` is raised.
    """
    return float(qmi_rate_array(state.matrix, h, state.dims, base, strict, tol))


def qmi_rate_full(state: BipartiteState, h: HamiltonianDecomposition, tol: Tolerances = TOL) -> float:
    """Unsimplified rate ``i Tr[[H, chi] L] - Tr[chi dL/dt]`` with
    ``L = log(rho_S (x) rho_B)``. Needs full-rank marginals."""
    d = derivatives(state.matrix, h, state.dims)
    d_s, d_b = state.dims
    log_prod = product_log(d["rho_s"], d["rho_b"], strict=True, tol=tol)
    log_dot = tensor(log_frechet(d["rho_s"], d["rho_s_dot"], tol), np.eye(d_b)) + tensor(
        np.eye(d_s), log_frechet(d["rho_b"], d["rho_b_dot"], tol)
    )
    val = 1j * trace_product(commutator(h.h_total, d["chi"]), log_prod) - trace_product(d["chi"], log_dot)
    return float(_real(val, "QMI rate"))


def qmi_rate_entropy_form(state: BipartiteState, h: HamiltonianDecomposition, tol: Tolerances = TOL) -> float:
    """``dS_S/dt + dS_B/dt = -Tr[rho_S' log rho_S] - Tr[rho_B' log rho_B]``."""
    d = derivatives(state.matrix, h, state.dims)
    log_s, _ = _restricted_log(d["rho_s"], False, tol)
    log_b, _ = _restricted_log(d["rho_b"], False, tol)
    val = -trace_product(d["rho_s_dot"], log_s) - trace_product(d["rho_b_dot"], log_b)
    return float(_real(val, "entropy rate"))


def chi_norm2_rate(state: BipartiteState, h: HamiltonianDecomposition) -> float:
    """Rate of the squared norm ``d|chi|_2^2/dt``."""
    return float(chi_norm2_rate_array(state.matrix, h, state.dims))


def chi_norm_rate(state: BipartiteState, h: HamiltonianDecomposition, min_norm: float = 1e-12) -> float:
    """``d|chi|_2/dt``; raises :class:`ZeroChi` when the norm is below ``min_norm``."""
    n = float(norm(split(state.matrix, state.dims)[3]))
    if n <= min_norm:
        raise ZeroChi(n)
    return chi_norm2_rate(state, h) / (2.0 * n)


def proportionality_gap(state: BipartiteState) -> float:
    """``d * ||rho_S (x) rho_B - 1/d||`` (operator norm), ``d = d_S d_B``.

    Small values mark the regime where ``dI/dt`` and the squared-norm rate
    are expected to track each other.
    """
    d = state.rho.dim
    return float(d * norm(state.product - np.eye(d) / d, "operator"))


def rate_ratio(state: BipartiteState, h: HamiltonianDecomposition) -> float:
    """``(dI/dt) / ((d/2) d|chi|_2^2/dt)``."""
    d = state.rho.dim
    return qmi_rate(state, h) / (0.5 * d * chi_norm2_rate(state, h))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniform-grid evolution with both measures and their analytic rates.

    ``chi_norm`` is ``|chi|_2``; ``chi_norm2_rate`` is the rate of its square.
    """

    times: np.ndarray
    rho: np.ndarray
    dims: tuple
    hamiltonian: HamiltonianDecomposition
    t_min: float
    dt: float
    qmi: np.ndarray
    chi_norm: np.ndarray
    qmi_rate: np.ndarray
    chi_norm2_rate: np.ndarray
    base: Optional[float] = None

    def __len__(self):
        return len(self.times)

    def state(self, i: int) -> BipartiteState:
        return make_state(self.rho[i], self.dims)

    @property
    def initial(self) -> BipartiteState:
        return self.state(0)

    def total_entropy(self) -> np.ndarray:
        return von_neumann_entropy(self.rho, self.base)

    def sign_product(self, zero_eps: float = 1e-9) -> np.ndarray:
        return thresholded_sign(self.qmi_rate, zero_eps) * thresholded_sign(self.chi_norm2_rate, zero_eps)


def time_grid(t_min: float, t_max: float, dt: float, max_points: int = 10**7) -> np.ndarray:
    """``t_min + k dt`` for ``k = 0..n-1``, last point not beyond ``t_max``."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not t_min < t_max:
        raise ValueError(f"need t_min < t_max, got [{t_min}, {t_max}]")
    n = int(math.floor((t_max - t_min) / dt + 1e-9)) + 1
    if n > max_points:
        raise GridTooLarge(f"grid of {n} points exceeds the cap of {max_points}")
    return t_min + dt * np.arange(n)


def sweep(
    state0: BipartiteState,
    h: HamiltonianDecomposition,
    t_min: float,
    t_max: float,
    dt: float,
    base=None,
    strict: bool = False,
    max_points: int = 10**7,
    chunk: int = 20000,
    tol: Tolerances = TOL,
) -> Trajectory:
    """Evolve ``state0`` over a uniform grid and fill every series."""
    times = time_grid(t_min, t_max, dt, max_points)
    dims = state0.dims
    n, d = len(times), state0.rho.dim
    rho = np.empty((n, d, d), dtype=complex)
    series = {k: np.empty(n) for k in ("qmi", "chi_norm", "qmi_rate", "chi_norm2_rate")}
    for lo in range(0, n, chunk):
        sl = slice(lo, min(lo + chunk, n))
        r = evolve_array(state0.matrix, h, times[sl])
        _validate_stack(r, times[sl], tol)
        rho[sl] = r
        series["qmi"][sl] = qmi_array(r, dims, base, tol)
        series["chi_norm"][sl] = norm(split(r, dims)[3])
        series["qmi_rate"][sl] = qmi_rate_array(r, h, dims, base, strict, tol)
        series["chi_norm2_rate"][sl] = chi_norm2_rate_array(r, h, dims)
    rho.setflags(write=False)
    return Trajectory(times, rho, dims, h, float(t_min), float(dt), base=base, **series)


def _validate_stack(r, times, tol):
    herm = hermiticity_defect(r)
    w = np.linalg.eigvalsh(r)
    tr = np.abs(np.trace(r, axis1=-2, axis2=-1) - 1.0)
    bad = (herm > tol.herm) | (w[:, 0] < -tol.psd) | (tr > tol.trace)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise InvalidState(f"evolved state at t={times[i]} failed validation (min eigenvalue {w[i, 0]:.3e}, trace error {tr[i]:.3e})")


def thresholded_sign(x, zero_eps: float) -> np.ndarray:
    x = np.asarray(x)
    return np.where(np.abs(x) < zero_eps, 0, np.sign(x)).astype(int)


@dataclass(frozen=True)
class DiscrepancyInterval:
    t_start: float
    t_end: float

    def matches(self, other, tol: float) -> bool:
        a, b = other
        return abs(self.t_start - a) <= tol and abs(self.t_end - b) <= tol

    def __iter__(self):
        return iter((self.t_start, self.t_end))


def opposite_sign_runs(sign_product) -> List[tuple]:
    """Index ranges ``(i, j)``, ``i < j``, of maximal runs where the product is -1."""
    neg = np.concatenate([[False], np.asarray(sign_product) < 0, [False]])
    edges = np.flatnonzero(np.diff(neg.astype(np.int8)))
    starts, stops = edges[::2], edges[1::2] - 1
    return [(int(i), int(j)) for i, j in zip(starts, stops) if j > i]


def discrepancy_scan(traj: Trajectory, zero_eps: float = 1e-9) -> List[DiscrepancyInterval]:
    """Maximal grid-aligned intervals where the two rates have strictly
    opposite signs. Rates below ``zero_eps`` in magnitude count as sign 0
    and break intervals; single-point runs are dropped."""
    runs = opposite_sign_runs(traj.sign_product(zero_eps))
    return [DiscrepancyInterval(float(traj.times[i]), float(traj.times[j])) for i, j in runs]
