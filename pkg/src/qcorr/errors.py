"""Exception hierarchy.

Every error carries the measured quantity that triggered it so callers can
report how far an input was from acceptable.
"""


class QcorrError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(QcorrError, ValueError):
    pass


class NonHermitianInput(QcorrError, ValueError):
    def __init__(self, deviation, msg=None):
        self.deviation = float(deviation)
        super().__init__(msg or f"matrix is not Hermitian: max |M - M^H| = {self.deviation:.3e}")


class SingularLog(QcorrError, ValueError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(
            f"log of a singular matrix requested without support restriction "
            f"(min eigenvalue {self.min_eigenvalue:.3e})"
        )


class InvalidState(QcorrError, ValueError):
    """A matrix failed density-matrix validation."""


class NotHermitian(InvalidState, NonHermitianInput):
    pass


class NotPositive(InvalidState):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"matrix is not positive semidefinite: min eigenvalue {self.min_eigenvalue:.3e}")


class TraceNotOne(InvalidState):
    def __init__(self, deviation):
        self.deviation = float(deviation)
        super().__init__(f"trace deviates from 1 by {self.deviation:.3e}")


class UnsupportedDimension(QcorrError, ValueError):
    pass


class BasisMismatch(QcorrError, ValueError):
    pass


class SingularMarginal(QcorrError, ValueError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"marginal is rank deficient (min eigenvalue {self.min_eigenvalue:.3e})")


class ZeroChi(QcorrError, ValueError):
    def __init__(self, norm):
        self.norm = float(norm)
        super().__init__(f"correlation matrix norm {self.norm:.3e} is too small to normalize")


class GridTooLarge(QcorrError, ValueError):
    pass


class FormMismatch(QcorrError, ArithmeticError):
    def __init__(self, difference):
        self.difference = float(difference)
        super().__init__(f"binding-energy forms disagree by {self.difference:.3e}")


class SingularReference(QcorrError, ValueError):
    pass


class NotThermalInitial(QcorrError, ValueError):
    def __init__(self, deviation):
        self.deviation = float(deviation)
        super().__init__(f"initial state differs from the thermal product state by {self.deviation:.3e}")


class InvalidStateInSweep(QcorrError, ValueError):
    def __init__(self, x, cause):
        self.x = x
        self.cause = cause
        super().__init__(f"invalid state at x={x}: {cause}")
