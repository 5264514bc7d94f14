"""Energy bookkeeping for correlations in a closed bipartite system.

The binding energy ``U_chi = Tr[chi H_I]`` is the part of the total energy
that exists only because the parties are both correlated and coupled.
Heat flowing into either side is measured against mean-field dressed
Hamiltonians, and the two heats together compensate changes of ``U_chi``.

Everything here uses the natural logarithm: the identities mix entropies
with ``beta * energy`` terms and only balance in nats.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from .dynamics import HamiltonianDecomposition, Trajectory, derivatives, evolve_array, product_log, qmi_rate_array
from .errors import FormMismatch, NotThermalInitial, SingularReference, ZeroChi
from .measures import qmi_array, split
from .operators import norm, partial_trace, tensor, trace_product
from .states import BipartiteState, ThermalReference, relative_entropy

FORM_TOL = 1e-10


def _tr_real(a, b):
    return np.real(trace_product(a, b))


def binding_energy(state: BipartiteState, h: HamiltonianDecomposition, form_tol: float = FORM_TOL) -> float:
    """``Tr[chi H_I]``, cross-checked against ``Tr[rho H] - Tr[rho_S (x) rho_B H]``.

    Raises:
        FormMismatch: if the two expressions differ by more than ``form_tol``,
            which means ``chi`` has non-vanishing partial traces.
    """
    chi = state.matrix - state.product
    direct = _tr_real(chi, h.h_i)
    total = _tr_real(state.matrix, h.h_total) - _tr_real(state.product, h.h_total)
    if abs(direct - total) > form_tol:
        raise FormMismatch(direct - total)
    return float(direct)


def _effective(h: HamiltonianDecomposition, rho_s, rho_b, which):
    dims = h.dims
    if which == "S":
        dressing = partial_trace(tensor(np.eye(dims[0]), rho_b) @ h.h_i, dims, keep="S")
        return h.h_s + dressing
    if which == "B":
        dressing = partial_trace(tensor(rho_s, np.eye(dims[1])) @ h.h_i, dims, keep="B")
        return h.h_b + dressing
    raise ValueError(f"which must be 'S' or 'B', got {which!r}")


def effective_hamiltonian(state: BipartiteState, h: HamiltonianDecomposition, which: str = "S") -> np.ndarray:
    """Local Hamiltonian dressed by the partner's mean field,
    e.g. ``H_S + Tr_B[(1 (x) rho_B) H_I]``."""
    return _effective(h, state.rho_s, state.rho_b, which)


@dataclass(frozen=True)
class HeatLedger:
    """Heat and binding-energy change over one grid step starting at ``time``."""

    time: float
    dq_s: float
    dq_b: float
    du_chi: float
    residual: float


def heat_ledger_arrays(traj: Trajectory, h: HamiltonianDecomposition = None) -> dict:
    """Per-step ``dQ_S``, ``dQ_B``, ``dU_chi`` and their sum as arrays.

    Step ``k`` spans ``[t_k, t_{k+1}]``; the dressed Hamiltonians use the
    step-averaged marginals, which makes ``dQ_S + dQ_B + dU_chi`` vanish
    up to rounding for closed evolution.
    """
    h = traj.hamiltonian if h is None else h
    rho_s, rho_b, _, chi = split(traj.rho, traj.dims)
    u = _tr_real(chi, h.h_i)
    mid_s = 0.5 * (rho_s[1:] + rho_s[:-1])
    mid_b = 0.5 * (rho_b[1:] + rho_b[:-1])
    dq_s = _tr_real(np.diff(rho_s, axis=0), _effective(h, mid_s, mid_b, "S"))
    dq_b = _tr_real(np.diff(rho_b, axis=0), _effective(h, mid_s, mid_b, "B"))
    du = np.diff(u)
    return {"time": traj.times[:-1], "dq_s": dq_s, "dq_b": dq_b, "du_chi": du, "residual": dq_s + dq_b + du}


def heat_ledger(traj: Trajectory, h: HamiltonianDecomposition = None) -> List[HeatLedger]:
    a = heat_ledger_arrays(traj, h)
    return [
        HeatLedger(float(t), float(qs), float(qb), float(du), float(r))
        for t, qs, qb, du, r in zip(a["time"], a["dq_s"], a["dq_b"], a["du_chi"], a["residual"])
    ]


def binding_energy_rate(state: BipartiteState, h: HamiltonianDecomposition) -> float:
    """``dU_chi/dt = Tr[(d chi/dt) H_I]``."""
    d = derivatives(state.matrix, h, state.dims)
    return float(_tr_real(d["chi_dot"], h.h_i))


def du_decomposition_norm(state: BipartiteState, h: HamiltonianDecomposition, min_norm: float = 1e-12):
    """Split ``dU_chi/dt`` into a magnitude part and a direction part.

    Returns ``(Tr[chi_hat H_I] d|chi|/dt, Tr[d chi_hat/dt H_I] |chi|)`` with
    ``chi_hat = chi / |chi|_2``.
    """
    d = derivatives(state.matrix, h, state.dims)
    chi, chi_dot = d["chi"], d["chi_dot"]
    n = float(norm(chi))
    if n <= min_norm:
        raise ZeroChi(n)
    n_dot = _tr_real(chi, chi_dot) / n
    chi_hat = chi / n
    chi_hat_dot = chi_dot / n - chi * n_dot / n**2
    return float(_tr_real(chi_hat, h.h_i) * n_dot), float(_tr_real(chi_hat_dot, h.h_i) * n)


def _check_reference(ref: ThermalReference, min_eigenvalue=1e-12):
    if ref.beta <= 0:
        raise SingularReference(f"beta must be positive, got {ref.beta}")
    for name, r in (("S", ref.rho_star_s), ("B", ref.rho_star_b)):
        w = np.linalg.eigvalsh(r.matrix)
        if w[0] <= min_eigenvalue:
            raise SingularReference(f"reference state of {name} is rank deficient (min eigenvalue {w[0]:.3e})")


def relative_entropy_rate(state: BipartiteState, h: HamiltonianDecomposition, ref: ThermalReference) -> float:
    """Analytic ``d/dt S(rho_S (x) rho_B || rho*_S (x) rho*_B)``."""
    d = derivatives(state.matrix, h, state.dims)
    log_prod = product_log(d["rho_s"], d["rho_b"])
    log_ref = product_log(ref.rho_star_s.matrix, ref.rho_star_b.matrix, strict=True)
    return float(_tr_real(d["product_dot"], log_prod - log_ref))


def du_decomposition_qmi(
    state: BipartiteState,
    h: HamiltonianDecomposition,
    ref: ThermalReference,
    fd_step: float = 1e-5,
):
    """Split ``dU_chi/dt`` against a fixed thermal reference.

    Returns ``(term_qmi, term_relent, term_local)``:

    * ``-(1/beta) dI/dt``
    * ``-(1/beta) d/dt S(rho_S (x) rho_B || rho*_S (x) rho*_B)``, by central
      difference of the relative entropy with step ``fd_step``
    * ``-Tr[d(rho_S (x) rho_B)/dt H_I]``
    """
    _check_reference(ref)
    beta = ref.beta
    dims = state.dims
    i_rate = float(qmi_rate_array(state.matrix, h, dims))
    ref_prod = ref.product
    ends = evolve_array(state.matrix, h, np.array([fd_step, -fd_step]))
    rel = [relative_entropy(split(r, dims)[2], ref_prod) for r in ends]
    rel_rate = (rel[0] - rel[1]) / (2.0 * fd_step)
    d = derivatives(state.matrix, h, dims)
    local = -float(_tr_real(d["product_dot"], h.h_i))
    return -i_rate / beta, -rel_rate / beta, local


def relative_entropy_additivity_gap(state: BipartiteState, ref: ThermalReference) -> float:
    """``|S(prod || ref_prod) - S(rho_S || rho*_S) - S(rho_B || rho*_B)|``."""
    joint = relative_entropy(state.product, ref.product)
    parts = relative_entropy(state.rho_s, ref.rho_star_s) + relative_entropy(state.rho_b, ref.rho_star_b)
    return abs(joint - parts)


def thermal_product_distance(state: BipartiteState, h: HamiltonianDecomposition, beta: float) -> float:
    """Max entrywise distance of ``state`` from the thermal product at ``beta``."""
    ref = ThermalReference.from_hamiltonians(h.h_s, h.h_b, beta)
    return float(np.max(np.abs(state.matrix - ref.product)))


def integrated_qmi_terms(traj: Trajectory, beta: float, index) -> dict:
    """Both sides of the integrated identity at grid ``index`` (int or array).

    For a start in the thermal product state,
    ``I(t) = -beta Tr[chi H_I] - S(P(t) || P(0)) - beta Tr[(P(t) - P(0)) H_I]``
    with ``P = rho_S (x) rho_B``.
    """
    h = traj.hamiltonian
    idx = np.atleast_1d(index)
    rho = traj.rho[idx]
    _, _, prod, chi = split(rho, traj.dims)
    prod0 = split(traj.rho[0], traj.dims)[2]
    lhs = qmi_array(rho, traj.dims)
    rel = np.array([relative_entropy(p, prod0) for p in prod])
    rhs = -beta * _tr_real(chi, h.h_i) - rel - beta * _tr_real(prod - prod0, h.h_i)
    return {"time": traj.times[idx], "lhs": lhs, "rhs": rhs, "residual": np.abs(lhs - rhs)}


def integrated_qmi_identity(traj: Trajectory, beta: float, checkpoints: int = 10, start_tol: float = 1e-10) -> float:
    """Max residual of the integrated identity over ``checkpoints`` interior
    grid points and the endpoint.

    Raises:
        NotThermalInitial: if the trajectory does not start in the thermal
            product state at ``beta``.
    """
    dev = thermal_product_distance(traj.initial, traj.hamiltonian, beta)
    if dev > start_tol:
        raise NotThermalInitial(dev)
    n = len(traj)
    idx = np.unique(np.linspace(0, n - 1, checkpoints + 2).round().astype(int)[1:])
    return float(np.max(integrated_qmi_terms(traj, beta, idx)["residual"]))


def area_law_bound(h: HamiltonianDecomposition, beta: float) -> float:
    """``2 beta ||H_I||`` (operator norm)."""
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    return float(2.0 * beta * norm(h.h_i, "operator"))
