"""matjul: dynamics of matrix-valued polynomials on 2x2 complex matrices.

The scalar polynomial p drives everything; a matrix M is classified, measured
(Green function) and straightened (Böttcher map) through its spectrum.
"""
from .errors import (
    MatjulError,
    NotEscapingError,
    OutputBusy,
    PreconditionError,
    SingularMatrixError,
)
from .scalar import Polynomial
from .matrix import Mat2, TolerancePolicy

__all__ = [
    "MatjulError",
    "NotEscapingError",
    "OutputBusy",
    "PreconditionError",
    "SingularMatrixError",
    "Polynomial",
    "Mat2",
    "TolerancePolicy",
]
