"""Exception hierarchy shared by all modules."""


class SliceError(Exception):
    """Base class for errors raised by slicelog."""


class DomainError(SliceError, ValueError):
    """An argument lies outside the domain of an operation."""


class BranchCutError(DomainError):
    """The argument lies on the cut (-inf, -1] of the inverse of mu."""


class NotInvertibleError(DomainError):
    """The symmetrized jet has a vanishing constant term."""


class ConsistencyError(SliceError, ArithmeticError):
    """An internal identity failed beyond tolerance."""


class RouteInapplicable(DomainError):
    """A logarithm construction route does not apply to the input."""


class ResidualError(SliceError, ArithmeticError):
    """A computed result does not reproduce its input within threshold."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class NumericError(SliceError, ArithmeticError):
    """A numerical procedure failed to converge."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual
