import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import close, fd_chi_norm2_rate, fd_qmi_rate

from qcorr.dynamics import (
    DiscrepancyInterval,
    HamiltonianDecomposition,
    chi_norm2_rate,
    chi_norm_rate,
    discrepancy_scan,
    evolve,
    opposite_sign_runs,
    proportionality_gap,
    qmi_rate,
    qmi_rate_entropy_form,
    qmi_rate_full,
    rate_ratio,
    sweep,
    thresholded_sign,
    time_grid,
)
from qcorr.ensembles import random_bipartite, random_hermitian
from qcorr.errors import GridTooLarge, NonHermitianInput, SingularMarginal, ZeroChi
from qcorr.lab import fixtures
from qcorr.operators import norm
from qcorr.states import make_state, purity, von_neumann_entropy

seeds = st.integers(0, 2**32 - 1)
PHI = np.array([1, 0, 0, 1]) / np.sqrt(2)
BELL = make_state(np.outer(PHI, PHI))


def noisy_bell(eps):
    return make_state((1 - eps) * np.outer(PHI, PHI) + eps * np.eye(4) / 4)


def random_decomposition(rng, scale=1.0):
    return HamiltonianDecomposition(
        random_hermitian(2, rng, scale), random_hermitian(2, rng, scale), random_hermitian(4, rng, scale)
    )


def test_example_hamiltonian(h_example):
    assert norm(h_example.h_i, "operator") == pytest.approx(7.5)
    assert np.trace(h_example.h_total) == pytest.approx(0.0)
    np.testing.assert_allclose(h_example.h_total, h_example.h_total.conj().T)
    z = np.diag([1.0, -1.0])
    np.testing.assert_allclose(
        h_example.h_total, np.kron(z, np.eye(2)) - 0.5 * np.kron(np.eye(2), z) + h_example.h_i, atol=1e-12
    )


def test_hamiltonian_parts_must_be_hermitian():
    with pytest.raises(NonHermitianInput):
        HamiltonianDecomposition(np.array([[0, 1], [0, 0]]), np.eye(2), np.eye(4))


def test_evolve_at_zero_is_identity(fixture_state, h_example):
    np.testing.assert_allclose(evolve(fixture_state, h_example, 0.0).matrix, fixture_state.matrix, atol=1e-12)


def test_commuting_state_is_stationary(h_example):
    rho = make_state(_gibbs(h_example.h_total, 0.3))
    for t in (0.3, 2.0, 11.0):
        np.testing.assert_allclose(evolve(rho, h_example, t).matrix, rho.matrix, atol=1e-12)


@pytest.mark.parametrize("t", [0.1, 4.4, -3.0, 25.0])
def test_evolution_is_reversible_and_preserves_purity(fixture_state, h_example, t):
    forward = evolve(fixture_state, h_example, t)
    back = evolve(forward, h_example, -t)
    np.testing.assert_allclose(back.matrix, fixture_state.matrix, atol=1e-10)
    assert purity(forward) == pytest.approx(purity(fixture_state), abs=1e-10)


def test_rates_vanish_on_product_state(h_example, rng):
    from qcorr.ensembles import random_product

    s = random_product(rng)
    assert qmi_rate(s, h_example) == pytest.approx(0.0, abs=1e-12)
    assert chi_norm2_rate(s, h_example) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("eps", [0.0, 0.1, 0.5])
def test_rates_vanish_with_maximally_mixed_marginals(h_example, eps):
    s = noisy_bell(eps)
    assert qmi_rate(s, h_example) == pytest.approx(0.0, abs=1e-12)
    assert chi_norm2_rate(s, h_example) == pytest.approx(0.0, abs=1e-12)
    assert fd_qmi_rate(s, h_example) == pytest.approx(0.0, abs=1e-8)
    assert fd_chi_norm2_rate(s, h_example) == pytest.approx(0.0, abs=1e-8)


def test_rates_match_finite_differences_at_4_4(fixture_state, h_example):
    s = evolve(fixture_state, h_example, 4.4)
    assert close(qmi_rate(s, h_example), fd_qmi_rate(s, h_example), abs_tol=0, rel_tol=1e-6)
    assert close(chi_norm2_rate(s, h_example), fd_chi_norm2_rate(s, h_example), abs_tol=0, rel_tol=1e-6)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_rate_forms_agree_on_random_inputs(seed):
    rng = np.random.default_rng(seed)
    s = random_bipartite(rng)
    h = random_decomposition(rng)
    simple = qmi_rate(s, h)
    assert qmi_rate_full(s, h) == pytest.approx(simple, abs=1e-9)
    assert qmi_rate_entropy_form(s, h) == pytest.approx(simple, abs=1e-9)
    assert close(simple, fd_qmi_rate(s, h), abs_tol=1e-7)
    assert close(chi_norm2_rate(s, h), fd_chi_norm2_rate(s, h), abs_tol=1e-7)


def test_base_two_rate_is_rescaled(fixture_state, h_example):
    assert qmi_rate(fixture_state, h_example, base=2) == pytest.approx(qmi_rate(fixture_state, h_example) / np.log(2))


def test_singular_marginal_handling(h_example):
    s = make_state(np.diag([1.0, 0, 0, 0]))
    assert qmi_rate(s, h_example) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(SingularMarginal):
        qmi_rate(s, h_example, strict=True)


def test_chi_norm_rate(fixture_state, h_example):
    s = evolve(fixture_state, h_example, 4.4)
    n = norm(s.matrix - s.product)
    assert chi_norm_rate(s, h_example) == pytest.approx(chi_norm2_rate(s, h_example) / (2 * n))
    with pytest.raises(ZeroChi):
        chi_norm_rate(make_state(np.eye(4) / 4), h_example)


def test_proportionality_gap_values():
    assert proportionality_gap(BELL) == pytest.approx(0.0, abs=1e-12)
    # eigenvalues of diag(1,0,0,0) - 1/4 are (3/4, -1/4, -1/4, -1/4)
    assert proportionality_gap(make_state(np.diag([1.0, 0, 0, 0]))) == pytest.approx(3.0)
    for eps in (0.1, 0.01, 0.001):
        assert proportionality_gap(noisy_bell(eps)) == pytest.approx(0.0, abs=1e-12)


def test_rate_ratio_near_maximal_mixing_tends_to_half(h_example):
    # Away from t = 0 the marginals of a noisy Bell state drift off 1/2 and
    # both rates become nonzero; the ratio dI / ((d/2) d|chi|^2) tends to
    # 1/2, i.e. dI ~ (d/4) d|chi|^2, as the state approaches a Bell state.
    ratios = []
    for eps in (0.1, 0.01, 0.001):
        s = evolve(noisy_bell(eps), h_example, 0.1)
        assert abs(qmi_rate(s, h_example)) > 1e-6 and abs(chi_norm2_rate(s, h_example)) > 1e-6
        ratios.append(fd_qmi_rate(s, h_example) / (2 * fd_chi_norm2_rate(s, h_example)))
        assert rate_ratio(s, h_example) == pytest.approx(ratios[-1], rel=1e-6)
    gaps = [abs(r - 0.5) for r in ratios]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_time_grid():
    t = time_grid(4.0, 8.0, 4e-5)
    assert len(t) == 100001
    assert t[-1] == pytest.approx(8.0)
    with pytest.raises(GridTooLarge):
        time_grid(0.0, 1.0, 1e-3, max_points=100)
    with pytest.raises(ValueError):
        time_grid(1.0, 0.0, 0.1)


def test_sweep_with_zero_hamiltonian_is_constant(fixture_state):
    zero = HamiltonianDecomposition(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((4, 4)))
    traj = sweep(fixture_state, zero, 0.0, 1.0, 0.01)
    assert np.ptp(traj.qmi) <= 1e-12 and np.ptp(traj.chi_norm) <= 1e-12
    assert np.max(np.abs(traj.qmi_rate)) <= 1e-12 and np.max(np.abs(traj.chi_norm2_rate)) <= 1e-12
    assert discrepancy_scan(traj) == []


def test_sweep_from_stationary_state_is_constant(h_example):
    traj = sweep(make_state(_gibbs(h_example.h_total, 0.7)), h_example, 0.0, 2.0, 0.01)
    assert np.ptp(traj.qmi) <= 1e-10 and np.ptp(traj.chi_norm) <= 1e-10


def _gibbs(h, beta):
    w, v = np.linalg.eigh(h)
    p = np.exp(-beta * (w - w[0]))
    return (v * (p / p.sum())) @ v.conj().T


def test_trajectory_invariants(example2_traj):
    s = von_neumann_entropy(example2_traj.rho)
    assert np.ptp(s) <= 1e-8
    tr = np.trace(example2_traj.rho, axis1=1, axis2=2)
    assert np.max(np.abs(tr - 1)) <= 1e-10
    assert np.min(np.linalg.eigvalsh(example2_traj.rho[::97])) >= -1e-10


def test_sweep_series_agree_with_pointwise_calls(example2_traj, h_example):
    from qcorr.measures import chi_norm2, qmi

    for i in (0, 9000, 54321, len(example2_traj) - 1):
        s = example2_traj.state(i)
        assert example2_traj.qmi[i] == pytest.approx(qmi(s), abs=1e-12)
        assert example2_traj.chi_norm[i] == pytest.approx(chi_norm2(s), abs=1e-12)
        assert example2_traj.qmi_rate[i] == pytest.approx(qmi_rate(s, h_example), abs=1e-12)
        assert example2_traj.chi_norm2_rate[i] == pytest.approx(chi_norm2_rate(s, h_example), abs=1e-12)


def test_thresholded_sign_and_runs():
    assert list(thresholded_sign([-1.0, 1e-12, 2.0], 1e-9)) == [-1, 0, 1]
    prod = [1, -1, -1, 0, -1, -1, -1, 1, -1, 1, -1, -1]
    # single-point runs drop; the zero splits adjacent runs
    assert opposite_sign_runs(prod) == [(1, 2), (4, 6), (10, 11)]


def test_scan_on_synthetic_series():
    from qcorr.dynamics import Trajectory

    t = np.linspace(0.0, 1.0, 11)
    a = np.array([1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1.0])
    b = np.array([1, -1, -1, -1, -1, -1, 1, 1, -1, -1, 1.0])
    traj = Trajectory(t, np.zeros((11, 4, 4)), (2, 2), None, 0.0, 0.1, a, a, a, b)
    ivs = discrepancy_scan(traj, zero_eps=1e-9)
    # index 4 is a zero of the QMI rate, leaving index 5 as a dropped single point
    assert [tuple(iv) for iv in ivs] == [(t[1], t[3]), (t[8], t[9])]


def test_discrepancy_interval_helpers():
    iv = DiscrepancyInterval(4.372, 4.431)
    assert iv.matches((4.371, 4.432), 0.01)
    assert not iv.matches((4.371, 4.452), 0.01)


def test_scan_finds_highlighted_intervals(example2_traj):
    ivs = discrepancy_scan(example2_traj, 1e-9)
    for ref in fixtures.HIGHLIGHTED_INTERVALS:
        assert any(iv.matches(ref, 0.01) for iv in ivs)
    for iv in ivs:
        assert iv.t_start < iv.t_end
        k0 = round((iv.t_start - 4.0) / 4e-5)
        assert iv.t_start == pytest.approx(4.0 + k0 * 4e-5, abs=1e-12)
