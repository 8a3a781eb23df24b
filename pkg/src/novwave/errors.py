"""Exception types shared across the package."""


class DomainError(ValueError):
    """A quantity left its admissible domain (e.g. w^2 >= c, non-positive b or k)."""


class ConvergenceError(RuntimeError):
    """Newton iteration failed to reach the requested residual.

    Carries the last residual in ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConsistencyError(RuntimeError):
    """An internal identity that should hold numerically was violated.

    Raised e.g. when the rescaled characteristic polynomial has imaginary
    coefficient residue far above roundoff, which signals an assembly bug or
    parameters outside the asymptotic trust region.
    """


class BracketingError(ValueError):
    """A bisection bracket does not straddle a sign change."""


class DegenerateCubicError(ValueError):
    """The cubic's leading coefficient vanished; no discriminant verdict."""
