"""Dense operator toolkit: Hermitian spectra, matrix functions, tensor
products, partial traces and norms.

Composite indices follow the S-major convention: basis state ``|i_S, i_B>``
sits at position ``i_S * d_B + i_B``, which is what :func:`numpy.kron` does.

Most functions accept stacks of matrices with arbitrary leading axes and act
on the last two.
"""

from typing import Callable, NamedTuple

import numpy as np

from .config import TOL, Tolerances
from .errors import DimensionMismatch, NonHermitianInput, SingularLog

SUBSYSTEMS = ("S", "B")


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def hermiticity_defect(m):
    """Max entrywise ``|M - M^dagger|`` (per matrix for stacked input)."""
    m = np.asarray(m)
    return np.max(np.abs(m - dagger(m)), axis=(-2, -1))


def _check_square(m):
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {m.shape}")


def hermitian_eig(m, tol: Tolerances = TOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises:
        NonHermitianInput: if ``max |M - M^dagger|`` exceeds ``tol.herm``.
    """
    m = np.asarray(m)
    _check_square(m)
    defect = np.max(hermiticity_defect(m))
    if defect > tol.herm:
        raise NonHermitianInput(defect)
    w, v = np.linalg.eigh(m)
    return HermitianEig(w, v)


def from_eig(eig: HermitianEig, values) -> np.ndarray:
    """Rebuild ``V diag(values) V^dagger``."""
    v = eig.eigenvectors
    return (v * np.asarray(values)[..., None, :]) @ dagger(v)


def matrix_function(m, f: Callable[[np.ndarray], np.ndarray], tol: Tolerances = TOL) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``f`` receives the (real) eigenvalue array and may return complex values,
    e.g. ``lambda w: np.exp(-1j * w * t)`` builds a propagator.
    """
    eig = hermitian_eig(m, tol)
    return from_eig(eig, f(eig.eigenvalues))


def _log_spectrum(w, support_restricted, tol, base):
    small = w <= tol.supp
    if np.any(small) and not support_restricted:
        raise SingularLog(np.min(w))
    out = np.where(small, 0.0, np.log(np.where(small, 1.0, w)))
    if base is not None:
        out = out / np.log(base)
    return out


def matrix_log(m, support_restricted: bool = False, base=None, tol: Tolerances = TOL) -> np.ndarray:
    """Matrix logarithm of a positive semidefinite Hermitian matrix.

    With ``support_restricted=True`` eigenvalues at or below ``tol.supp`` are
    dropped, i.e. the log is taken on the support only. Otherwise such
    eigenvalues raise :class:`SingularLog`.
    """
    eig = hermitian_eig(m, tol)
    return from_eig(eig, _log_spectrum(eig.eigenvalues, support_restricted, tol, base))


def log_frechet(a, e, tol: Tolerances = TOL) -> np.ndarray:
    """Directional derivative of ``log`` at positive definite ``a`` along ``e``.

    Uses the divided-difference (Daleckii-Krein) form in the eigenbasis of
    ``a``, so ``d/dt log(a(t)) = log_frechet(a, a'(t))``.
    """
    w, v = hermitian_eig(a, tol)
    if np.any(w <= tol.supp):
        raise SingularLog(np.min(w))
    lw = np.log(w)
    dw = w[..., :, None] - w[..., None, :]
    close = np.abs(dw) <= 1e-10 * np.maximum(w[..., :, None], w[..., None, :])
    mean = 0.5 * (w[..., :, None] + w[..., None, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = np.where(close, 1.0 / mean, (lw[..., :, None] - lw[..., None, :]) / np.where(close, 1.0, dw))
    return v @ ((dagger(v) @ e @ v) * kernel) @ dagger(v)


def unitary(h, t, tol: Tolerances = TOL) -> np.ndarray:
    """Propagator ``exp(-i h t)`` for Hermitian ``h``."""
    return matrix_function(h, lambda w: np.exp(-1j * w * t), tol)


def commutator(a, b):
    return a @ b - b @ a


def tensor(a, b) -> np.ndarray:
    """Kronecker product in S-major order; broadcasts over leading axes."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_square(a)
    _check_square(b)
    da, db = a.shape[-1], b.shape[-1]
    lead = np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    return out.reshape(lead + (da * db, da * db))


def partial_trace(m, dims, keep: str = "S") -> np.ndarray:
    """Reduce an operator on ``d_S * d_B`` to subsystem ``keep``.

    ``keep="S"`` traces out B (returns ``Tr_B[M]``); ``keep="B"`` traces out S.
    """
    m = np.asarray(m)
    _check_square(m)
    d_s, d_b = dims
    if d_s * d_b != m.shape[-1]:
        raise DimensionMismatch(f"dims {dims} do not factor a {m.shape[-1]}-dimensional operator")
    if keep not in SUBSYSTEMS:
        raise ValueError(f"keep must be one of {SUBSYSTEMS}, got {keep!r}")
    r = m.reshape(m.shape[:-2] + (d_s, d_b, d_s, d_b))
    if keep == "S":
        return np.einsum("...ijkj->...ik", r)
    return np.einsum("...ijil->...jl", r)


def trace(m):
    return np.trace(m, axis1=-2, axis2=-1)


def trace_product(a, b):
    """``Tr[A B]`` without forming the product."""
    return np.einsum("...ij,...ji->...", a, b)


def norm(m, kind: str = "frobenius"):
    """Matrix norm: ``frobenius`` (Hilbert-Schmidt), ``trace`` or ``operator``."""
    m = np.asarray(m)
    if kind == "frobenius":
        return np.sqrt(np.sum(np.abs(m) ** 2, axis=(-2, -1)))
    s = np.linalg.svd(m, compute_uv=False)
    if kind == "trace":
        return np.sum(s, axis=-1)
    if kind == "operator":
        return np.max(s, axis=-1)
    raise ValueError(f"unknown norm kind {kind!r}")
