"""Exception types shared across the package."""


class DFactorError(Exception):
    """Base class for all package errors."""


class ParseError(DFactorError):
    """Malformed polynomial/word expression or JSON description."""


class ShapeMismatch(DFactorError):
    """Matrix dimensions or twist offsets do not chain."""


class CompositionMismatch(DFactorError):
    """A cyclic d-fold composition does not equal the required map.

    Carries the 1-based rotation index and the residual matrix
    (composition minus expected).
    """

    def __init__(self, rotation, residual):
        self.rotation = rotation
        self.residual = residual
        super().__init__(f"composition mismatch at rotation {rotation}")


class HypothesesUnmet(DFactorError):
    """A theorem-backed operation was invoked outside its hypotheses.

    Reported distinctly from a verified-false outcome.
    """


class UnsupportedOperation(DFactorError):
    """Operation not defined for this backend (e.g. duals over a
    noncommutative algebra)."""


class DeadlineExceeded(DFactorError):
    """A cooperative solve deadline expired before a verdict."""
