"""The matrix polynomial P(M) = a_d M^d + ... + a_1 M + a_0 I."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .matrix import Mat2, Spectrum, SpectrumKind, conjugate
from .scalar import Polynomial, iterate_with_derivative

# entries beyond this stop an orbit; one more squaring still fits in a double
OVERFLOW_CUTOFF = 1e150


@dataclass(frozen=True)
class MatrixOrbit:
    points: List[Mat2]
    overflowed_at: Optional[int] = None

    @property
    def last(self) -> Mat2:
        return self.points[-1]

    @property
    def overflowed(self) -> bool:
        return self.overflowed_at is not None


def eval_P(p: Polynomial, m: Mat2) -> Mat2:
    """Horner: ((a_d M + a_{d-1} I) M + ...) M + a_0 I."""
    coeffs = p.coeffs
    acc = Mat2.identity() * coeffs[-1]
    for a in reversed(coeffs[:-1]):
        acc = acc @ m
        acc = Mat2(acc.a + a, acc.b, acc.c, acc.d + a)
    return acc


def iterate_P(p: Polynomial, m: Mat2, n: int) -> MatrixOrbit:
    if n < 0:
        raise ValueError("n must be non-negative")
    points = [m]
    current = m
    for k in range(1, n + 1):
        current = eval_P(p, current)
        points.append(current)
        if not current.is_finite() or current.max_abs() > OVERFLOW_CUTOFF:
            return MatrixOrbit(points, overflowed_at=k)
    return MatrixOrbit(points)


def lift_iterate(p: Polynomial, spectrum: Spectrum, n: int) -> Mat2:
    """P^n(M) rebuilt from the scalar dynamics of the eigenvalues."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if spectrum.kind is SpectrumKind.SCALAR:
        zn, _ = iterate_with_derivative(p, spectrum.eigenvalues[0], n)
        return Mat2.diag(zn, zn)
    if spectrum.kind is SpectrumKind.DISTINCT:
        l1, l2 = spectrum.eigenvalues
        z1, _ = iterate_with_derivative(p, l1, n)
        z2, _ = iterate_with_derivative(p, l2, n)
        return conjugate(spectrum.Q, Mat2.diag(z1, z2))
    zn, dzn = iterate_with_derivative(p, spectrum.eigenvalues[0], n)
    return conjugate(spectrum.Q, Mat2.jordan(zn, dzn))
