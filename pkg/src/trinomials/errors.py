"""Exception types shared across the package."""

from __future__ import annotations

import numpy as np


class ValidationError(ValueError):
    """Malformed input: zero polynomial, non-finite coefficients, bad job."""


class DomainError(ValueError):
    """A parameter lies outside the range where an operation is defined."""


class ConvergenceError(RuntimeError):
    """The root finder did not reach its residual tolerance.

    The best iterate and its residuals are kept on the exception so callers
    can inspect or report the partial result.
    """

    def __init__(self, message: str, best: np.ndarray, residuals: np.ndarray):
        super().__init__(message)
        self.best = best
        self.residuals = residuals


class NumericalError(RuntimeError):
    """A bracketing step failed (no sign change in the expected interval)."""
