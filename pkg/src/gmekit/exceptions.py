"""Exception types shared across the package."""


class ToolkitError(Exception):
    """Base class for all errors raised by gmekit."""


class ShapeError(ToolkitError, ValueError):
    """Matrix or subsystem dimensions do not fit together."""


class ValidationError(ToolkitError, ValueError):
    """An input value violates a documented precondition."""


class DegenerateStateError(ValidationError):
    """A state constructor received coefficients that are all zero."""


class NumericalConsistencyError(ToolkitError, ArithmeticError):
    """A quantity that must be nonnegative came out negative beyond tolerance.

    Raised when the expectation value of a positive operator is more negative
    than the active tolerance allows, which indicates a corrupted input
    (e.g. a non-positive density matrix) rather than roundoff.
    """
