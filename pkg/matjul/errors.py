"""Exception types shared across matjul.

Overflow is never raised; it travels in-band (see ``scalar.OVERFLOW`` and
``Mat2.is_finite``).
"""
from typing import Optional


class MatjulError(Exception):
    """Base class for matjul errors."""


class PreconditionError(MatjulError, ValueError):
    """A documented precondition of an operation does not hold."""


class SingularMatrixError(MatjulError, ZeroDivisionError):
    """A matrix that must be inverted is singular to working precision."""


class NotEscapingError(PreconditionError):
    """Raised by escape-only operations when the orbit stays bounded."""

    def __init__(self, z: complex, budget: int):
        self.z = z
        self.budget = budget
        super().__init__(f"orbit of {z!r} did not escape within {budget} iterations")


class OutputBusy(MatjulError):
    """Raised when an output file stays locked by another writer; retry later."""

    def __init__(self, path: str, retry_after: Optional[float] = None):
        self.path = path
        self.retry_after = retry_after
        super().__init__(f"output {path} is busy; retry after {retry_after}")
