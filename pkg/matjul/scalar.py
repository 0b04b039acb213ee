"""One-variable polynomial dynamics.

Iteration, escape, the Green function G_p, derivative growth and the Böttcher
coordinate of a complex polynomial p of degree d >= 2. Everything here is a
pure function of its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple
import cmath
import math

import numpy as np

from . import series
from .config import ATTRACT_MARGIN, CYCLE_TOL, DEFAULT_BUDGET, DEFAULT_MAX_PERIOD
from .errors import NotEscapingError, PreconditionError

OVERFLOW = complex(math.inf, math.inf)

# escaped orbits are followed until |z| passes max(GREEN_THRESHOLD, 2R)
GREEN_THRESHOLD = 1e8
BOETTCHER_TOL = 1e-14
_BOETTCHER_MAX_TERMS = 200
_HUGE = 1e100


def is_overflow(z: complex) -> bool:
    return not cmath.isfinite(z)


def modulus(z: complex) -> float:
    try:
        return abs(z)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class Polynomial:
    """p(z) = a_0 + a_1 z + ... + a_d z^d, coefficients stored ascending."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(a) for a in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 3:
            raise ValueError("polynomial degree must be at least 2")
        if not all(cmath.isfinite(a) for a in coeffs):
            raise ValueError("polynomial coefficients must be finite")
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient must be non-zero")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "Polynomial":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, alpha: complex = 1.0) -> "Polynomial":
        return cls(tuple([0j] * degree + [complex(alpha)]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    def derivative_coeffs(self) -> Tuple[complex, ...]:
        return tuple(i * a for i, a in enumerate(self.coeffs) if i > 0)

    def is_monomial(self, tol: float = 0.0) -> bool:
        return all(abs(a) <= tol for a in self.coeffs[:-1])

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def to_list(self) -> List[List[float]]:
        return [[a.real, a.imag] for a in self.coeffs]

    def __str__(self) -> str:
        return ",".join(_fmt_complex(a) for a in self.coeffs)


def _fmt_complex(a: complex) -> str:
    if a.imag == 0:
        return repr(a.real)
    return f"{a.real!r}{a.imag:+}i"


def _horner(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    try:
        for a in reversed(coeffs):
            acc = acc * z + a
    except OverflowError:
        return OVERFLOW
    if not cmath.isfinite(acc):
        return OVERFLOW
    return acc


def evaluate(p: Polynomial, z: complex) -> complex:
    """Horner evaluation of p at z; returns OVERFLOW instead of raising."""
    return _horner(p.coeffs, complex(z))


def evaluate_derivative(p: Polynomial, z: complex) -> complex:
    return _horner(p.derivative_coeffs(), complex(z))


def escape_radius(p: Polynomial) -> float:
    """R >= 1 with |p(z)| >= 2|z| whenever |z| > R."""
    lower = sum(abs(a) for a in p.coeffs[:-1])
    return max(1.0, (1.0 + lower + 2.0) / abs(p.leading))


def green_threshold(p: Polynomial) -> float:
    return max(GREEN_THRESHOLD, 2.0 * escape_radius(p))


@lru_cache(maxsize=256)
def boettcher_radius(p: Polynomial) -> float:
    """Positive root r of |a_d| r^d - sum_{i<d} |a_i| r^i - r.

    Beyond r every orbit grows strictly and |p(w)/(a_d w^d) - 1| < 1, which is
    all the Böttcher product needs. r never exceeds escape_radius(p).
    """
    mags = [abs(a) for a in p.coeffs]

    def excess(r: float) -> float:
        return mags[-1] * r ** p.degree - sum(m * r ** i for i, m in enumerate(mags[:-1])) - r

    lo, hi = 0.0, escape_radius(p)
    for _ in range(200):
        mid = (lo + hi) / 2
        if excess(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def boettcher_leading(p: Polynomial) -> complex:
    """Principal (d-1)-th root of the leading coefficient."""
    return cmath.exp(cmath.log(p.leading) / (p.degree - 1))


@dataclass(frozen=True)
class EscapeStatus:
    escaped: bool
    n: int
    z: complex
    budget: int
    radius: float

    @property
    def tag(self) -> str:
        return "Escaped" if self.escaped else "Bounded"

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "n": self.n,
            "z": [self.z.real, self.z.imag],
            "budget": self.budget,
            "radius": self.radius,
        }


def orbit_classify(p: Polynomial, z: complex, budget: int = DEFAULT_BUDGET,
                   radius: Optional[float] = None) -> EscapeStatus:
    R = escape_radius(p)
    if radius is None:
        radius = R
    elif radius < R:
        raise PreconditionError(f"radius {radius} is below the escape radius {R}")
    if budget < 0:
        raise PreconditionError("budget must be non-negative")
    z = complex(z)
    for n in range(budget + 1):
        if modulus(z) > radius:
            return EscapeStatus(True, n, z, budget, radius)
        if n == budget:
            break
        z = evaluate(p, z)
    return EscapeStatus(False, budget, z, budget, radius)


@dataclass(frozen=True)
class GreenEstimate:
    value: float
    error_bound: float
    iterations_used: int
    censored: bool = False

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "iterations_used": self.iterations_used,
            "censored": self.censored,
        }


def tail_epsilon(p: Polynomial, r: float) -> float:
    """Bound on |p(w)/(a_d w^d) - 1| for |w| >= r."""
    d = p.degree
    ad = abs(p.leading)
    return sum(abs(a) / ad * r ** (i - d) for i, a in enumerate(p.coeffs[:-1]))


def _follow_escape(p: Polynomial, z: complex, budget: int):
    """Iterate until |z| passes the Green threshold.

    Returns (n, z_n) or None when the orbit stays inside the escape radius for
    the whole budget. Once past R the orbit reaches the threshold in a bounded
    number of extra steps, so those are not charged to the budget.
    """
    R = escape_radius(p)
    T = green_threshold(p)
    z = complex(z)
    n = 0
    while modulus(z) <= R:
        if n >= budget:
            return None
        z = evaluate(p, z)
        n += 1
    while modulus(z) <= T:
        nxt = evaluate(p, z)
        if is_overflow(nxt):
            break
        z = nxt
        n += 1
    return n, z


def green_scalar(p: Polynomial, z: complex, budget: int = DEFAULT_BUDGET) -> GreenEstimate:
    """Escape-rate estimate d^-n log|b z_n| with a certified error bound.

    b is the Böttcher leading coefficient, so the estimate is exact for
    alpha z^d. Orbits that stay bounded are censored: value 0.
    """
    hit = _follow_escape(p, z, budget)
    if hit is None:
        return GreenEstimate(0.0, 0.0, budget, censored=True)
    n, zn = hit
    d = p.degree
    scale = float(d) ** (-n)
    log_b = math.log(abs(p.leading)) / (d - 1)
    value = scale * (math.log(modulus(zn)) + log_b)
    eps = tail_epsilon(p, modulus(zn))
    error = scale * (-math.log1p(-eps)) / (d - 1)
    return GreenEstimate(max(value, 0.0), error, n)


def iterate_with_derivative(p: Polynomial, z: complex, n: int) -> Tuple[complex, complex]:
    """(p^n(z), (p^n)'(z)) by the chain rule."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    z = complex(z)
    dz = 1 + 0j
    for _ in range(n):
        dz = dz * evaluate_derivative(p, z)
        z = evaluate(p, z)
        if is_overflow(z) or is_overflow(dz):
            return OVERFLOW, OVERFLOW
    return z, dz


def _safe_log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def derivative_growth(p: Polynomial, z: complex, n: int, budget: int = DEFAULT_BUDGET) -> float:
    """d^-n log|(p^n)'(z)| for an escaping z, tracked in log space.

    Beyond the Green threshold the leading term dominates, and the remaining
    steps use log|p(w)| ~ log|a_d| + d log|w|.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    if not orbit_classify(p, z, max(budget, n)).escaped:
        raise NotEscapingError(complex(z), max(budget, n))
    d = p.degree
    T = green_threshold(p)
    log_ad = math.log(abs(p.leading))
    log_dad = math.log(d * abs(p.leading))
    w = complex(z)
    log_w = _safe_log(modulus(w))
    log_dw = 0.0
    k = 0
    while k < n and modulus(w) <= T:
        log_dw += _safe_log(modulus(evaluate_derivative(p, w)))
        w = evaluate(p, w)
        log_w = math.log(modulus(w))
        k += 1
    for _ in range(k, n):
        log_dw += log_dad + (d - 1) * log_w
        log_w = log_ad + d * log_w
    return log_dw * float(d) ** (-n)


def boettcher_scalar(p: Polynomial, z: complex) -> complex:
    """phi_p(z) = b z prod_k (p(z_{k-1}) / (a_d z_{k-1}^d))^(d^-k) for |z| > boettcher_radius(p)."""
    z = complex(z)
    r = boettcher_radius(p)
    if modulus(z) <= r:
        raise PreconditionError(f"|z| = {abs(z)} is not above the Böttcher radius {r}")
    d = p.degree
    ad = p.leading
    ratios = [a / ad for a in p.coeffs[:-1]]
    log_sum = 0j
    weight = 1.0
    w = z
    monomial = p.is_monomial()
    for _ in range(_BOETTCHER_MAX_TERMS):
        if monomial:
            break
        weight /= d
        u = 1 / w
        # f - 1 = sum_i (a_i/a_d) u^(d-i)
        f_minus_1 = 0j
        for a in ratios:
            f_minus_1 = (f_minus_1 + a) * u
        term = weight * cmath.log(1 + f_minus_1)
        log_sum += term
        if abs(term) < BOETTCHER_TOL:
            break
        if modulus(w) > _HUGE:
            break
        w = evaluate(p, w)
    return boettcher_leading(p) * z * cmath.exp(log_sum)


def _fd_step(z: complex) -> float:
    return max(1e-5, 1e-8 * abs(z))


def boettcher_derivative_scalar(p: Polynomial, z: complex) -> complex:
    """phi_p'(z) by a fourth-order central difference along the real axis."""
    z = complex(z)
    h = _fd_step(z)
    r = boettcher_radius(p)
    if abs(z) - 2 * h <= r:
        raise PreconditionError(f"|z| = {abs(z)} leaves no finite-difference margin above r = {r}")
    f = [boettcher_scalar(p, z + k * h) for k in (-2, -1, 1, 2)]
    return (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)


def laurent_coefficients(p: Polynomial, n: int) -> List[complex]:
    """(b, b_0, ..., b_n) with phi_p(z) = b z + b_0 + b_1/z + ... near infinity.

    Writing phi_p(z) = b z h(1/z) with h(0) = 1, the identity
    phi_p(p(z)) = phi_p(z)^d becomes A(u) h(u^d / (a_d A(u))) = h(u)^d where
    p(z) = a_d z^d A(1/z). The coefficient of u^k on the left only involves
    c_j with j < k, on the right it is d c_k plus lower terms.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    d = p.degree
    order = n + 1
    ad = p.leading
    A = np.zeros(order + 1, dtype=complex)
    A[0] = 1.0
    for i, a in enumerate(p.coeffs[:-1]):
        if d - i <= order:
            A[d - i] += a / ad
    ud = np.zeros(order + 1, dtype=complex)
    if d <= order:
        ud[d] = 1.0
    v = series.mul(ud, series.inverse(A, order), order) / ad
    c = np.zeros(order + 1, dtype=complex)
    c[0] = 1.0
    for k in range(1, order + 1):
        lhs = series.mul(A, series.compose(c, v, order), order)[k]
        rhs = series.power(c, d, order)[k]
        c[k] = (lhs - rhs) / d
    b = boettcher_leading(p)
    return [b] + [complex(b * ck) for ck in c[1:]]


def evaluate_laurent(coeffs: Sequence[complex], z: complex) -> complex:
    """b z + b_0 + b_1/z + ... + b_n/z^n."""
    b, rest = coeffs[0], coeffs[1:]
    u = 1 / complex(z)
    acc = 0j
    for bj in reversed(rest):
        acc = acc * u + bj
    return b * z + acc


def local_degree(p: Polynomial, zeta: complex, tol: float = 1e-12) -> int:
    """1 + the number of consecutive vanishing derivatives of p at zeta."""
    coeffs = list(p.derivative_coeffs())
    k = 1
    while len(coeffs) > 1:
        scale = max(1.0, max(abs(a) for a in coeffs))
        if abs(_horner(coeffs, zeta)) > tol * scale:
            break
        coeffs = [i * a for i, a in enumerate(coeffs) if i > 0]
        k += 1
    return k


@dataclass(frozen=True)
class CycleInfo:
    period: int
    multiplier: complex
    points: Tuple[complex, ...]
    found_at: int
    local_degree: int = 1

    @property
    def multiplier_modulus(self) -> float:
        return abs(self.multiplier)


def checkpoints(budget: int) -> List[int]:
    marks = []
    k = 16
    while k < budget:
        marks.append(k)
        k *= 2
    marks.append(budget)
    return marks


def detect_cycle(p: Polynomial, orbit: Sequence[complex], max_period: int = DEFAULT_MAX_PERIOD,
                 cycle_tol: float = CYCLE_TOL) -> Optional[CycleInfo]:
    """Smallest q <= max_period with |z_k - z_{k-q}| <= cycle_tol at the orbit tail."""
    k = len(orbit) - 1
    tail = orbit[k]
    for q in range(1, min(max_period, k) + 1):
        if abs(tail - orbit[k - q]) <= cycle_tol:
            points = tuple(orbit[k - q + 1: k + 1])
            m = 1 + 0j
            for w in points:
                m *= evaluate_derivative(p, w)
            K = 1
            for w in points:
                K *= local_degree(p, w)
            return CycleInfo(q, m, points, k, K)
    return None


def find_attracting_cycle(p: Polynomial, z: complex, budget: int = DEFAULT_BUDGET,
                          max_period: int = DEFAULT_MAX_PERIOD, cycle_tol: float = CYCLE_TOL,
                          attract_margin: float = ATTRACT_MARGIN,
                          orbit: Optional[List[complex]] = None) -> Optional[CycleInfo]:
    """Checkpointed search for an attracting cycle along the orbit of z.

    Cycles are looked for at steps 16, 32, 64, ... and at the budget. A cycle
    counts as attracting when its multiplier modulus is below 1 - margin.
    Returns None if the orbit escapes or nothing attracting is confirmed.
    Pass a list as ``orbit`` to collect the visited points.
    """
    R = escape_radius(p)
    if orbit is None:
        orbit = []
    orbit.append(complex(z))
    marks = checkpoints(budget)
    step = 0
    for mark in marks:
        while step < mark:
            nxt = evaluate(p, orbit[-1])
            if modulus(nxt) > R:
                return None
            orbit.append(nxt)
            step += 1
        cyc = detect_cycle(p, orbit, max_period, cycle_tol)
        if cyc is not None and cyc.multiplier_modulus < 1 - attract_margin:
            return cyc
    return None
