"""Exception hierarchy. The CLI maps these onto exit codes."""


class LaplaceqError(Exception):
    """Base class for all domain errors."""


class InvalidParameter(LaplaceqError, ValueError):
    """A family parameter (n, m, k, ...) is outside its valid range."""


class DegenerateInput(LaplaceqError, ValueError):
    """Input for which the requested object is undefined (e.g. no edges)."""


class InvalidInput(LaplaceqError, ValueError):
    """A spectrum or vector violates a precondition such as normalization."""


class ParseError(LaplaceqError, ValueError):
    """Malformed graph / phase text. ``position`` locates the problem."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class NumericalFailure(LaplaceqError, ArithmeticError):
    """An iterative method did not converge, or a PSD check failed."""

    def __init__(self, message, residual=None):
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual
