"""Exception hierarchy for gaussbures."""


class GaussBuresError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidParams(GaussBuresError):
    pass


class UnphysicalState(GaussBuresError):
    """The covariance matrix violates the uncertainty relation."""


class UnphysicalInput(UnphysicalState):
    """A one-mode covariance matrix has det < 1/4."""


class NumericalDegeneracy(GaussBuresError):
    pass


class NotSymmetric(GaussBuresError):
    pass


class OutOfRange(GaussBuresError):
    pass


class NotSymplectic(GaussBuresError):
    pass


class DegenerateDenominator(GaussBuresError):
    pass


class NoConvergence(GaussBuresError):
    pass


class MultipleRoots(GaussBuresError):
    """Several admissible roots were found; they are kept on ``roots``."""

    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = roots


class EigensolverFailure(GaussBuresError):
    pass
