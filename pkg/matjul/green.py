"""Matrix Green function and matrix Böttcher map.

Two Green routes: the direct one iterates P on the matrix and takes
d^-n log+ ||P^n(M)||, the spectral one takes the larger scalar Green value of
the eigenvalues. The Böttcher map acts through the Jordan form of M.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple
import math

import numpy as np

from .config import DEFAULT_BUDGET
from .errors import PreconditionError
from .matrix import (
    Mat2,
    Spectrum,
    SpectrumKind,
    TolerancePolicy,
    conjugate,
    eigen_decompose,
    frobenius_norm,
)
from .matpoly import eval_P
from .scalar import (
    Polynomial,
    boettcher_derivative_scalar,
    boettcher_leading,
    boettcher_radius,
    boettcher_scalar,
    escape_radius,
    evaluate,
    evaluate_derivative,
    green_scalar,
    green_threshold,
    laurent_coefficients,
    modulus,
    tail_epsilon,
)

# direct iteration hands over to the eigenvalues beyond this norm
SWITCH_NORM = 1e8


class GreenRoute(str, Enum):
    DIRECT = "Direct"
    EIGEN_MAX = "EigenMax"


@dataclass(frozen=True)
class MatrixGreen:
    value: float
    route: GreenRoute
    error_bound: float
    n: Optional[int] = None
    switched_at: Optional[int] = None
    censored: bool = False

    def to_dict(self) -> dict:
        out = {"value": self.value, "route": self.route.value, "error_bound": self.error_bound}
        if self.n is not None:
            out["n"] = self.n
        if self.switched_at is not None:
            out["switched_at"] = self.switched_at
        out["censored"] = self.censored
        return out


@dataclass(frozen=True)
class OmegaDomain:
    """Matrices whose eigenvalues all lie outside the disc of radius R."""

    R: float

    @classmethod
    def for_polynomial(cls, p: Polynomial) -> "OmegaDomain":
        return cls(boettcher_radius(p))

    def validate(self, p: Polynomial) -> None:
        if self.R < boettcher_radius(p):
            raise PreconditionError(f"Omega radius {self.R} is below the Böttcher radius of p")

    def contains_point(self, lam: complex) -> bool:
        return abs(lam) > self.R

    def contains(self, m: Mat2, tol: Optional[TolerancePolicy] = None) -> bool:
        spectrum = eigen_decompose(m, tol)
        return spectrum.is_finite and all(self.contains_point(l) for l in spectrum.pair)


def _log_plus(x: float) -> float:
    return math.log(x) if x > 1 else 0.0


def green_constant(p: Polynomial) -> float:
    """C_p with |G_p(w) - log+|w|| <= C_p on the whole plane."""
    R = escape_radius(p)
    d = p.degree
    log_b = abs(math.log(abs(boettcher_leading(p))))
    slack = _log_plus(R * abs(p.leading) / 3.0) / (d - 1)
    return _log_plus(R) + log_b + slack + math.log(2.0)


def _derivative_bound(p: Polynomial) -> float:
    """max(d, sup_{|w|<=R} |p'(w)|), bounded through the coefficients."""
    R = escape_radius(p)
    lip = sum(i * abs(a) * R ** (i - 1) for i, a in enumerate(p.coeffs) if i > 0)
    return max(float(p.degree), lip)


def _log_orbit(p: Polynomial, z: complex, m: int) -> Tuple[float, float, float]:
    """(log|p^m(z)|, log|(p^m)'(z)|, tail error) with asymptotic steps past the threshold.

    The tail error bounds how far the asymptotic steps can move the first
    value; it is already expressed in units of that value.
    """
    d = p.degree
    T = green_threshold(p)
    log_ad = math.log(abs(p.leading))
    log_dad = math.log(d * abs(p.leading))
    w = complex(z)
    log_dw = 0.0
    k = 0
    while k < m and modulus(w) <= T:
        dv = modulus(evaluate_derivative(p, w))
        log_dw += math.log(dv) if dv > 0 else -math.inf
        w = evaluate(p, w)
        k += 1
    r = modulus(w)
    log_w = math.log(r) if r > 0 else -math.inf
    remaining = m - k
    if remaining == 0:
        return log_w, log_dw, 0.0
    eps = min(tail_epsilon(p, r), 0.5)
    tail = math.exp(min(remaining * math.log(d), 700.0)) * (-math.log1p(-eps)) / (d - 1)
    for _ in range(remaining):
        log_dw += log_dad + (d - 1) * log_w
        log_w = log_ad + d * log_w
    return log_w, log_dw, 2 * tail


def _spectral_log_norm(p: Polynomial, x: Mat2, m: int, tol: Optional[TolerancePolicy]) -> Tuple[float, float]:
    """Estimate log ||P^m(X)||_F from the eigenvalues of X, with an error bound."""
    spectrum = eigen_decompose(x, tol)
    if spectrum.kind is SpectrumKind.DISTINCT and not spectrum.near_defective:
        l1, l2 = spectrum.eigenvalues
        best, tail_err, proj = -math.inf, 0.0, 1.0
        for mu, other in ((l1, l2), (l2, l1)):
            # spectral projector (X - other I) / (mu - other)
            pi = frobenius_norm(x - Mat2.identity() * other) / abs(mu - other)
            lz, _, tail = _log_orbit(p, mu, m)
            best = max(best, lz + math.log(pi))
            tail_err = max(tail_err, tail)
            proj = max(proj, pi)
        return best, math.log(2.0) + math.log(proj) + tail_err
    lam = spectrum.eigenvalues[0]
    nil = frobenius_norm(x - Mat2.identity() * lam)
    lz, ldz, tail = _log_orbit(p, lam, m)
    terms = [lz + 0.5 * math.log(2.0)]
    if nil > 0:
        terms.append(ldz + math.log(nil))
    return max(terms), math.log(4.0) + 2 * tail


def green_direct(p: Polynomial, m: Mat2, n: int = 20, tol: Optional[TolerancePolicy] = None) -> MatrixGreen:
    """G_n(M) = d^-n log+ ||P^n(M)||_F.

    Once the norm passes SWITCH_NORM the remaining steps run on the spectrum
    of the current iterate in log space, so nothing overflows.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    if not m.is_finite():
        raise PreconditionError("matrix has non-finite entries")
    d = p.degree
    scale = float(d) ** (-n)
    spectrum = eigen_decompose(m, tol)
    extra = math.log(spectrum.cond_Q) + math.log(2.0)
    if spectrum.kind is SpectrumKind.DEFECTIVE or spectrum.near_defective:
        extra += n * math.log(_derivative_bound(p))
    error = scale * (green_constant(p) + extra)

    x = m
    for k in range(n):
        if frobenius_norm(x) > SWITCH_NORM:
            log_norm, err = _spectral_log_norm(p, x, n - k, tol)
            value = scale * max(0.0, log_norm)
            return MatrixGreen(value, GreenRoute.DIRECT, error + scale * err, n=n, switched_at=k)
        x = eval_P(p, x)
    value = scale * _log_plus(frobenius_norm(x))
    return MatrixGreen(value, GreenRoute.DIRECT, error, n=n)


def green_matrix(p: Polynomial, m: Mat2, budget: int = DEFAULT_BUDGET,
                 tol: Optional[TolerancePolicy] = None) -> MatrixGreen:
    """G(M) = max(G_p(l1), G_p(l2)); a Jordan block contributes only its eigenvalue."""
    if not m.is_finite():
        raise PreconditionError("matrix has non-finite entries")
    spectrum = eigen_decompose(m, tol)
    lams = spectrum.eigenvalues if spectrum.kind is SpectrumKind.DISTINCT else spectrum.eigenvalues[:1]
    estimates = [green_scalar(p, lam, budget) for lam in lams]
    value = max(e.value for e in estimates)
    error = max(e.error_bound for e in estimates)
    return MatrixGreen(value, GreenRoute.EIGEN_MAX, error, censored=all(e.censored for e in estimates))


def _require_omega(p: Polynomial, spectrum: Spectrum, omega: Optional[OmegaDomain]) -> OmegaDomain:
    omega = omega or OmegaDomain.for_polynomial(p)
    omega.validate(p)
    if not spectrum.is_finite or not all(omega.contains_point(l) for l in spectrum.pair):
        raise PreconditionError(f"eigenvalues {spectrum.pair} are not all outside radius {omega.R}")
    return omega


def boettcher_matrix(p: Polynomial, m: Mat2, omega: Optional[OmegaDomain] = None,
                     tol: Optional[TolerancePolicy] = None) -> Mat2:
    spectrum = eigen_decompose(m, tol)
    _require_omega(p, spectrum, omega)
    if spectrum.kind is SpectrumKind.SCALAR:
        phi = boettcher_scalar(p, spectrum.eigenvalues[0])
        return Mat2.diag(phi, phi)
    if spectrum.kind is SpectrumKind.DISTINCT:
        l1, l2 = spectrum.eigenvalues
        return conjugate(spectrum.Q, Mat2.diag(boettcher_scalar(p, l1), boettcher_scalar(p, l2)))
    lam = spectrum.eigenvalues[0]
    jordan = Mat2.jordan(boettcher_scalar(p, lam), boettcher_derivative_scalar(p, lam))
    return conjugate(spectrum.Q, jordan)


def boettcher_series(p: Polynomial, m: Mat2, n: int, tol: Optional[TolerancePolicy] = None) -> Mat2:
    """Phi_n(M) = b M + b_0 I + b_1 M^-1 + ... + b_n M^-n."""
    spectrum = eigen_decompose(m, tol)
    _require_omega(p, spectrum, None)
    inv = m.inverse()
    coeffs = laurent_coefficients(p, n)
    b, rest = coeffs[0], coeffs[1:]
    acc = Mat2.identity() * rest[-1]
    for bj in reversed(rest[:-1]):
        acc = acc @ inv
        acc = Mat2(acc.a + bj, acc.b, acc.c, acc.d + bj)
    return m * b + acc


def series_tail_bound(p: Polynomial, m: Mat2, n: int, tol: Optional[TolerancePolicy] = None) -> float:
    """2 |b_{n+1}| (2R)^-(n+1) once every eigenvalue has |lam| >= 2R, else inf."""
    R = escape_radius(p)
    spectrum = eigen_decompose(m, tol)
    if not spectrum.is_finite or any(abs(l) < 2 * R for l in spectrum.pair):
        return math.inf
    b_next = laurent_coefficients(p, n + 1)[-1]
    return 2 * abs(b_next) * (2 * R) ** (-(n + 1))


def log_growth_bound(p: Polynomial, radii: int = 64, angles: int = 64, r_max: float = 1e6) -> float:
    """Sampled sup of |G_p(z) - log|z|| over R <= |z| <= r_max."""
    R = escape_radius(p)
    worst = 0.0
    for r in np.geomspace(R * (1 + 1e-9), r_max, radii):
        for theta in np.linspace(0.0, 2 * math.pi, angles, endpoint=False):
            z = complex(r * math.cos(theta), r * math.sin(theta))
            worst = max(worst, abs(green_scalar(p, z).value - math.log(r)))
    return worst + 1e-6
