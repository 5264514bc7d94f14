"""Numerical tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Absolute thresholds used by validation and support-restricted functions.

    Attributes:
        herm: max entrywise ``|M - M^dagger|`` accepted as Hermitian.
        recon: entrywise reconstruction tolerance for eigendecompositions.
        supp: eigenvalues at or below this are treated as exactly zero by
            support-restricted logarithms (``0 log 0 = 0``).
        psd: smallest eigenvalue accepted for a density matrix is ``-psd``.
        trace: allowed deviation of a density matrix trace from one.
        zero_chi: ``chi_norm2`` at or below this counts as a product state.
    """

    herm: float = 1e-10
    recon: float = 1e-10
    supp: float = 1e-12
    psd: float = 1e-10
    trace: float = 1e-10
    zero_chi: float = 1e-9


TOL = Tolerances()
