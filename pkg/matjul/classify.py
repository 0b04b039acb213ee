"""Fatou/Julia stratification of matrices from eigenvalue verdicts.

A matrix escapes when one of its eigenvalues escapes, lies in the bounded
Fatou set when every eigenvalue is attracted to a cycle, and otherwise sits
in J_1 (one eigenvalue in J_p, the other in int K_p) or J_2.

Numerics cannot certify membership of J_p. An eigenvalue whose conformal
distance estimate to J_p is within ``julia_band`` is reported as
BoundedUnresolved with ``near_boundary`` set, and an orbit that never
escapes nor settles on an attracting cycle within budget is
BoundedUnresolved as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import List, Optional, Tuple
import cmath
import math

from .config import ClassifyParams
from .matrix import Mat2, SpectrumKind, Spectrum, TolerancePolicy, distance, eigen_decompose, frobenius_norm
from .matpoly import iterate_P
from .scalar import (
    CycleInfo,
    GreenEstimate,
    Polynomial,
    checkpoints,
    detect_cycle,
    escape_radius,
    evaluate,
    evaluate_derivative,
    green_scalar,
    green_threshold,
    is_overflow,
    iterate_with_derivative,
    modulus,
)

# orbit points closer than this to the cycle feed the interior estimate
INTERIOR_WINDOW = 1e-6
SUPERATTRACTING = 1e-12


class PointKind(str, Enum):
    ESCAPING = "Escaping"
    INTERIOR_ATTRACTING = "InteriorAttracting"
    BOUNDED_UNRESOLVED = "BoundedUnresolved"


@dataclass(frozen=True)
class PointClass:
    kind: PointKind
    green: Optional[GreenEstimate] = None
    period: Optional[int] = None
    multiplier_modulus: Optional[float] = None
    cycle: Tuple[complex, ...] = ()
    distance_estimate: Optional[float] = None
    near_boundary: bool = False
    escaped: bool = False
    iterations: int = 0

    @property
    def is_escaping(self) -> bool:
        return self.kind is PointKind.ESCAPING

    @property
    def is_interior(self) -> bool:
        return self.kind is PointKind.INTERIOR_ATTRACTING

    @property
    def is_unresolved(self) -> bool:
        return self.kind is PointKind.BOUNDED_UNRESOLVED

    def to_dict(self) -> dict:
        out = {"tag": self.kind.value, "iterations": self.iterations}
        if self.green is not None:
            out["green"] = self.green.to_dict()
        if self.period is not None:
            out["period"] = self.period
            out["multiplier_modulus"] = self.multiplier_modulus
            out["cycle"] = [[z.real, z.imag] for z in self.cycle]
        if self.distance_estimate is not None:
            out["distance_estimate"] = self.distance_estimate
        out["near_boundary"] = self.near_boundary
        out["escaped"] = self.escaped
        out["censored"] = self.is_unresolved and not self.near_boundary
        return out


def _log_sinh(x: float) -> float:
    if x <= 0:
        return -math.inf
    if x > 20:
        return x - math.log(2.0)
    return math.log(math.sinh(x))


def _exp_or_inf(x: float) -> float:
    if x > 700:
        return math.inf
    return math.exp(x)


def _log_abs(z: complex) -> float:
    r = modulus(z)
    return math.log(r) if r > 0 else -math.inf


def _escape_distance(p: Polynomial, n: int, log_zn: float, log_dzn: float, g: float) -> float:
    """sinh(G) / |grad G| with |grad G| = |z_n'| / (d^n |z_n|)."""
    if log_dzn == -math.inf:
        return math.inf
    log_d = _log_sinh(g) + n * math.log(p.degree) + log_zn - log_dzn
    return _exp_or_inf(log_d)


def _interior_distance(orbit: List[complex], log_dz: List[float], cycle: CycleInfo) -> float:
    for n, z in enumerate(orbit):
        w = min(abs(z - zeta) for zeta in cycle.points)
        if 0 < w < INTERIOR_WINDOW:
            break
    else:
        return math.inf
    if log_dz[n] == -math.inf:
        return math.inf
    log_w = math.log(w)
    K = cycle.local_degree
    if cycle.multiplier_modulus <= SUPERATTRACTING and K > 1:
        expo = n / cycle.period * math.log(K)
        g = abs(log_w) * math.exp(-expo)
        return _exp_or_inf(_log_sinh(g) + expo + log_w - log_dz[n])
    return _exp_or_inf(log_w - log_dz[n])


def classify_eigenvalue(p: Polynomial, lam: complex, params: Optional[ClassifyParams] = None) -> PointClass:
    params = params or ClassifyParams()
    lam = complex(lam)
    if not cmath.isfinite(lam):
        return PointClass(PointKind.BOUNDED_UNRESOLVED, near_boundary=True)
    R = escape_radius(p)
    orbit = [lam]
    log_dz = [0.0]
    escaped = modulus(lam) > R
    cycle = None
    step = 0
    if not escaped:
        for mark in checkpoints(params.max_iter):
            while step < mark:
                z = orbit[-1]
                log_dz.append(log_dz[-1] + _log_abs(evaluate_derivative(p, z)))
                orbit.append(evaluate(p, z))
                step += 1
                if modulus(orbit[-1]) > R:
                    escaped = True
                    break
            if escaped:
                break
            found = detect_cycle(p, orbit, params.max_period, params.cycle_tol)
            if found is not None and found.multiplier_modulus < 1 - params.attract_margin:
                cycle = found
                break

    if escaped:
        T = green_threshold(p)
        z, ld, n = orbit[-1], log_dz[-1], len(orbit) - 1
        while modulus(z) <= T:
            nxt = evaluate(p, z)
            if is_overflow(nxt):
                break
            ld += _log_abs(evaluate_derivative(p, z))
            z = nxt
            n += 1
        green = green_scalar(p, lam, params.max_iter)
        d_est = _escape_distance(p, n, _log_abs(z), ld, green.value)
        # sinh(G)/|grad G| overshoots |lam| - 1 by a factor (1 + G) near J_p
        if d_est <= params.julia_band * (1 + green.value):
            return PointClass(PointKind.BOUNDED_UNRESOLVED, green=green, distance_estimate=d_est,
                              near_boundary=True, escaped=True, iterations=n)
        return PointClass(PointKind.ESCAPING, green=green, distance_estimate=d_est, escaped=True, iterations=n)

    if cycle is not None:
        d_est = _interior_distance(orbit, log_dz, cycle)
        common = dict(period=cycle.period, multiplier_modulus=cycle.multiplier_modulus,
                      cycle=cycle.points, distance_estimate=d_est, iterations=step)
        if d_est <= params.julia_band:
            return PointClass(PointKind.BOUNDED_UNRESOLVED, near_boundary=True, **common)
        return PointClass(PointKind.INTERIOR_ATTRACTING, **common)

    return PointClass(PointKind.BOUNDED_UNRESOLVED, iterations=step)


class MatrixKind(str, Enum):
    FATOU_ESCAPING = "FatouEscaping"
    FATOU_BOUNDED = "FatouBounded"
    JULIA1 = "Julia1"
    JULIA2 = "Julia2"
    UNRESOLVED = "Unresolved"

    @property
    def is_julia(self) -> bool:
        return self in (MatrixKind.JULIA1, MatrixKind.JULIA2)


@dataclass(frozen=True)
class MatrixClass:
    kind: MatrixKind
    eigen_verdicts: Tuple[PointClass, PointClass]
    defective: bool
    spectrum: Optional[Spectrum] = None
    params: ClassifyParams = field(default_factory=ClassifyParams)

    @property
    def near_defective(self) -> bool:
        return bool(self.spectrum and self.spectrum.near_defective)

    def to_dict(self) -> dict:
        out = {
            "tag": self.kind.value,
            "eigen_verdicts": [v.to_dict() for v in self.eigen_verdicts],
            "defective": self.defective,
            "near_defective": self.near_defective,
            "budgets": self.params.to_dict(),
        }
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum.to_dict()
        return out


def _verdicts(p: Polynomial, spectrum: Spectrum, params: ClassifyParams) -> Tuple[PointClass, PointClass]:
    l1, l2 = spectrum.pair
    v1 = classify_eigenvalue(p, l1, params)
    v2 = classify_eigenvalue(p, l2, params) if spectrum.kind is SpectrumKind.DISTINCT else v1
    return v1, v2


def classify_matrix(p: Polynomial, m: Mat2, params: Optional[ClassifyParams] = None,
                    tol: Optional[TolerancePolicy] = None) -> MatrixClass:
    params = params or ClassifyParams()
    if not m.is_finite():
        unknown = PointClass(PointKind.BOUNDED_UNRESOLVED, near_boundary=True)
        return MatrixClass(MatrixKind.UNRESOLVED, (unknown, unknown), False, None, params)
    spectrum = eigen_decompose(m, tol)
    verdicts = _verdicts(p, spectrum, params)
    defective = spectrum.kind is SpectrumKind.DEFECTIVE

    def result(kind: MatrixKind) -> MatrixClass:
        return MatrixClass(kind, verdicts, defective, spectrum, params)

    if any(v.is_escaping for v in verdicts):
        return result(MatrixKind.FATOU_ESCAPING)
    if spectrum.kind is SpectrumKind.DISTINCT:
        interior = sum(v.is_interior for v in verdicts)
        if interior == 2:
            return result(MatrixKind.FATOU_BOUNDED)
        if interior == 1:
            if spectrum.near_defective:
                return result(MatrixKind.UNRESOLVED)
            return result(MatrixKind.JULIA1)
        return result(MatrixKind.JULIA2)
    if verdicts[0].is_interior:
        return result(MatrixKind.FATOU_BOUNDED)
    return result(MatrixKind.JULIA2)


class Closure(str, Enum):
    YES = "yes"
    NO = "no"
    UNRESOLVED = "unresolved"


def closure_from_verdicts(verdicts) -> Closure:
    if any(v.is_escaping for v in verdicts):
        return Closure.NO
    if any(v.is_unresolved and v.escaped for v in verdicts):
        return Closure.UNRESOLVED
    return Closure.YES


def in_closure_KP(p: Polynomial, m: Mat2, params: Optional[ClassifyParams] = None,
                  tol: Optional[TolerancePolicy] = None) -> Closure:
    """Membership of M in the closure of K_P, decided through its eigenvalues."""
    if not m.is_finite():
        return Closure.UNRESOLVED
    params = params or ClassifyParams()
    return closure_from_verdicts(_verdicts(p, eigen_decompose(m, tol), params))


def periodic_check(p: Polynomial, m: Mat2, n_max: int = 64, tol: float = 1e-9,
                   policy: Optional[TolerancePolicy] = None) -> Optional[int]:
    """Smallest n <= n_max with P^n(M) = M up to tol * max(1, ||M||).

    A defective M must also satisfy p^n(lam) = lam and (p^n)'(lam) = 1.
    """
    orbit = iterate_P(p, m, n_max)
    scale = max(1.0, frobenius_norm(m))
    spectrum = eigen_decompose(m, policy)
    analytic_tol = max(tol, 1e-6)
    for n, point in enumerate(orbit.points[1:], start=1):
        if orbit.overflowed_at is not None and n >= orbit.overflowed_at:
            break
        if distance(point, m) > tol * scale:
            continue
        if spectrum.kind is SpectrumKind.DEFECTIVE:
            lam = spectrum.eigenvalues[0]
            zn, dzn = iterate_with_derivative(p, lam, n)
            if abs(zn - lam) > analytic_tol * max(1.0, abs(lam)) or abs(dzn - 1) > analytic_tol:
                continue
        return n
    return None


def fatou_component_period(p: Polynomial, m: Mat2, params: Optional[ClassifyParams] = None) -> Optional[int]:
    """n0 with P^n0 mapping the bounded Fatou component of M into itself."""
    mc = classify_matrix(p, m, params)
    if mc.kind is not MatrixKind.FATOU_BOUNDED:
        return None
    periods = [v.period for v in mc.eigen_verdicts if v.period]
    return reduce(math.lcm, periods, 1)


def is_unit_circle_preserving(p: Polynomial, tol: float = 1e-12) -> bool:
    """True iff p = alpha z^d with |alpha| = 1."""
    return p.is_monomial(tol * abs(p.leading)) and abs(abs(p.leading) - 1) <= tol
