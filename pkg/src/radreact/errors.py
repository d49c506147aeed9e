"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class ResolutionError(PreconditionError):
    """A step size or grid is too coarse for the requested accuracy."""


class TruncationError(ValueError):
    """A Fock-space truncation is too small for the requested state.

    ``required_n_max`` holds the smallest cutoff that satisfies the guard.
    """

    def __init__(self, message, required_n_max):
        super().__init__(message)
        self.required_n_max = required_n_max


class QuadratureEvaluationError(ArithmeticError):
    """The integrand returned a non-finite value."""

    def __init__(self, abscissa):
        super().__init__(f"integrand is not finite at x = {abscissa!r}")
        self.abscissa = abscissa


class NonConvergenceError(ArithmeticError):
    """A numerical procedure did not reach its tolerance."""

    def __init__(self, message, error_estimate):
        super().__init__(f"{message} (error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate
