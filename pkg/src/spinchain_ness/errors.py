"""Exception types shared by all solver modules."""


class InvalidParameterError(ValueError):
    """A physical or numerical parameter is outside its admissible range."""


class NumericRangeError(ArithmeticError):
    """A computation left the representable floating-point range."""


class InternalStateError(RuntimeError):
    """An internal consistency check failed; indicates corrupted input or a bug."""


class ResourceLimitError(RuntimeError):
    """The requested computation exceeds the configured memory/size budget."""


class DegenerateSteadyStateError(RuntimeError):
    """The Liouvillian null space is not one-dimensional within tolerance."""

    def __init__(self, message, near_zero_spectrum=None):
        super().__init__(message)
        self.near_zero_spectrum = near_zero_spectrum


class SteadyStateConvergenceError(RuntimeError):
    """The steady-state solver did not reach the requested residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
