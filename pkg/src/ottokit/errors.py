"""Exception hierarchy for the ottokit package.

Every exception carries the name of the violated precondition in
``precondition`` so that command-line consumers can emit machine-readable
diagnostics.  Messages always start with that name.
"""


class OttoError(Exception):
    """Base class for all package errors."""

    def __init__(self, precondition: str, message: str = ""):
        self.precondition = precondition
        super().__init__(f"{precondition}: {message}" if message else precondition)


class DomainError(OttoError):
    """Inputs outside the physically meaningful domain."""


class OperationModeError(OttoError):
    """Cycle is not operating in the mode the quantity requires."""


class ValidityRegionError(OttoError):
    """Low-temperature formula evaluated outside its validity guard."""


class CoolingWindowError(OttoError):
    """Compression ratio outside the refrigeration window."""


class TauTooSmallError(CoolingWindowError):
    """Cold bath colder than half the hot bath: sudden-switch cooling impossible."""


class IntegrationFailureError(OttoError):
    """Adaptive integrator exceeded its step budget or produced junk."""


class NoSignChangeError(OttoError):
    """Root bracket does not straddle a sign change."""


class MaxIterationsError(OttoError):
    """Iterative routine hit its iteration cap before converging."""


class DivergenceError(OttoError):
    """Optimizer iterates left the caller-declared validity region."""


class DegenerateCubicError(OttoError):
    """Leading cubic coefficient is zero."""


class FitResidualError(OttoError):
    """Series fit residual exceeds the requested tolerance."""


class ComplexResidueError(OttoError):
    """Complex-radical evaluation left a non-negligible imaginary part."""


class NoRootInWindowError(OttoError):
    """No cubic root inside the cooling window; internal consistency error."""


class BoundViolationError(OttoError):
    """A sampled efficiency or COP exceeded its analytic upper bound."""
