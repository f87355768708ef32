"""Exception hierarchy shared by all modules."""


class SymhornError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(SymhornError, ValueError):
    """Shapes or lengths are inconsistent."""


class SymmetryError(SymhornError, ValueError):
    """A matrix expected to be symmetric (or skew-symmetric) is not."""


class DefinitenessError(SymhornError, ValueError):
    """A matrix expected to be positive definite is not."""


class DomainError(SymhornError, ValueError):
    """A scalar argument lies outside the domain of the operation."""


class ConstraintError(SymhornError, ValueError):
    """A majorisation precondition does not hold.

    ``index`` is the 1-based partial-sum index at which the relation first
    fails, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NumericalError(SymhornError, ArithmeticError):
    """An algorithm failed to converge or failed its own residual check.

    ``details`` carries whatever diagnostics were measured (residuals, a
    partially verified report, ...).
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details
