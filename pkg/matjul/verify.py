"""Randomized property suites over the scalar, matrix, classification and
Green/Böttcher layers.

Every suite draws from its own generator, seeded by (seed, crc32(name)), so a
suite's rows do not depend on which other suites run or in which process.
Violations are normalized so each row compares against a fixed tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import cmath
import io
import logging
import math
import multiprocessing as mp
import zlib

import numpy as np

from .classify import Closure, MatrixKind, classify_matrix, in_closure_KP, is_unit_circle_preserving, periodic_check
from .green import boettcher_matrix, green_direct, green_matrix, log_growth_bound
from .matpoly import eval_P, iterate_P, lift_iterate
from .matrix import (
    Mat2,
    SpectrumKind,
    condition_number,
    conjugate,
    distance,
    eigen_decompose,
    eigenvalues,
    frobenius_norm,
    random_conjugator,
    spectral_radius,
)
from .scalar import (
    Polynomial,
    boettcher_radius,
    boettcher_scalar,
    derivative_growth,
    escape_radius,
    evaluate,
    evaluate_laurent,
    green_scalar,
    laurent_coefficients,
    orbit_classify,
)
from .slices import SliceMode, SliceSpec, pixel_to_matrix

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps


def _poly(*coeffs) -> Polynomial:
    return Polynomial(tuple(coeffs))


FIXTURE_POLYS: Tuple[Polynomial, ...] = (
    _poly(0, 0, 1),
    _poly(-1, 0, 1),
    _poly(-2, 0, 1),
    _poly(0.25j, 0, 1),
)
SQUARE = FIXTURE_POLYS[0]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    samples: int
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def csv_row(self) -> str:
        return f"{self.name},{self.samples},{self.max_violation!r},{self.tolerance!r},{'pass' if self.passed else 'fail'}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "max_violation": self.max_violation,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class VerifyReport:
    seed: int
    count: int
    rows: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> List[PropertyResult]:
        return [r for r in self.rows if not r.passed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("property,samples,max_violation,tolerance,pass\n")
        for row in self.rows:
            buf.write(row.csv_row() + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "rows": [r.to_dict() for r in self.rows],
        }


class _Tracker:
    """Running maximum of a normalized violation."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.samples = 0
        self.worst = 0.0

    def add(self, violation: float) -> None:
        self.samples += 1
        if math.isnan(violation):
            violation = math.inf
        self.worst = max(self.worst, violation)

    def result(self) -> PropertyResult:
        return PropertyResult(self.name, self.samples, self.worst, self.tolerance)


def suite_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def random_complex(rng: np.random.Generator, box: float = 3.0) -> complex:
    return complex(rng.uniform(-box, box), rng.uniform(-box, box))


def random_polar(rng: np.random.Generator, r_lo: float, r_hi: float) -> complex:
    """Log-uniform modulus, uniform argument."""
    r = math.exp(rng.uniform(math.log(r_lo), math.log(r_hi)))
    return cmath.rect(r, rng.uniform(0, 2 * math.pi))


def random_matrix(rng: np.random.Generator, box: float = 3.0) -> Mat2:
    return Mat2(*(random_complex(rng, box) for _ in range(4)))


def matrix_with_spectrum(rng: np.random.Generator, l1: complex, l2: complex, max_cond: float = 10.0) -> Mat2:
    return conjugate(random_conjugator(rng, max_cond), Mat2.diag(l1, l2))


def mat_power(m: Mat2, k: int) -> Mat2:
    out = Mat2.identity()
    for _ in range(k):
        out = out @ m
    return out


# scalar-dynamics

def _escape_radius_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("escape-radius", 1e-12)
    for p in polys:
        R = escape_radius(p)
        for _ in range(count):
            z = random_polar(rng, R * (1 + 1e-9), 10 * R)
            t.add(max(0.0, 2 * abs(z) - abs(evaluate(p, z))) / abs(z))
    return [t.result()]


def _functional_equation_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("functional-equation", 1e-9)
    for p in polys:
        R = escape_radius(p)
        for _ in range(count):
            z = random_polar(rng, R * (1 + 1e-6), 10 * R)
            phi = boettcher_scalar(p, z)
            lhs = boettcher_scalar(p, evaluate(p, z))
            rhs = phi ** p.degree
            t.add(abs(lhs - rhs) / abs(rhs))
    return [t.result()]


def _green_consistency_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("green-consistency", 1e-9)
    for p in polys:
        R = escape_radius(p)
        for _ in range(count):
            z = random_polar(rng, R * (1 + 1e-6), 10 * R)
            t.add(abs(math.log(abs(boettcher_scalar(p, z))) - green_scalar(p, z).value))
    return [t.result()]


def _scalar_green_equation_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("scalar-green-functional-eq", 1e-12)
    for p in polys:
        d = p.degree
        for _ in range(count):
            z = random_complex(rng, 3.0)
            g = green_scalar(p, z)
            gp = green_scalar(p, evaluate(p, z))
            t.add(max(0.0, abs(gp.value - d * g.value) - (gp.error_bound + d * g.error_bound)))
    return [t.result()]


def _derivative_growth_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("derivative-growth", 1e-4)
    for p in polys:
        R = escape_radius(p)
        for _ in range(count):
            z = random_polar(rng, R * 0.5, 4 * R)
            if not orbit_classify(p, z).escaped:
                continue
            t.add(abs(derivative_growth(p, z, 25) - green_scalar(p, z).value))
    return [t.result()]


def _laurent_suite(rng, count, polys) -> List[PropertyResult]:
    # truncation bound 10 |z|^-(n+1) plus the rounding floor of a value of size |z|
    t = _Tracker("laurent-series", 1.0)
    for p in polys:
        coeffs = laurent_coefficients(p, 3)
        for _ in range(count):
            n = int(rng.integers(0, 3))
            z = cmath.rect(1e4, rng.uniform(0, 2 * math.pi))
            exact = boettcher_scalar(p, z)
            approx = evaluate_laurent(coeffs[: n + 2], z)
            allowance = 10 * abs(z) ** (-(n + 1)) + 64 * EPS * abs(exact)
            t.add(abs(approx - exact) / allowance)
    return [t.result()]


# matrix-core

def _reconstruction_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("reconstruction", 1e-9)
    for _ in range(count * len(polys)):
        m = random_matrix(rng)
        s = eigen_decompose(m)
        t.add(distance(s.rebuild(), m) / (s.cond_Q * max(1.0, frobenius_norm(m))))
    return [t.result()]


def _spectral_similarity_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("spectral-similarity", 1e-9)
    for _ in range(count * len(polys)):
        m = random_matrix(rng)
        q = random_conjugator(rng, 1e2)
        rho = spectral_radius(m)
        scale = condition_number(q) * eigen_decompose(m).cond_Q * max(1.0, rho)
        t.add(abs(spectral_radius(conjugate(q, m)) - rho) / scale)
    return [t.result()]


def _norm_dominates_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("norm-dominates", 1e-12)
    for _ in range(count * len(polys)):
        m = random_matrix(rng)
        norm = frobenius_norm(m)
        t.add(max(0.0, spectral_radius(m) - norm) / max(1.0, norm))
    return [t.result()]


def _det_trace_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("det-trace", 1e-10)
    for _ in range(count * len(polys)):
        m = random_matrix(rng)
        l1, l2 = eigenvalues(m)
        det_err = abs(l1 * l2 - m.det()) / max(1.0, abs(l1) * abs(l2))
        tr_err = abs(l1 + l2 - m.trace()) / max(1.0, abs(l1) + abs(l2))
        t.add(max(det_err, tr_err))
    return [t.result()]


# matrix-polynomial

def _lift_direct_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("lift-direct", 1e-6)
    for p in polys:
        for _ in range(count):
            m = random_matrix(rng, 1.5)
            s = eigen_decompose(m)
            if s.cond_Q > 1e3:
                continue
            n = int(rng.integers(0, 13))
            orbit = iterate_P(p, m, n)
            lifted = lift_iterate(p, s, n)
            if orbit.overflowed or not lifted.is_finite():
                continue
            direct = orbit.last
            t.add(distance(direct, lifted) / (s.cond_Q ** 2 * max(1.0, frobenius_norm(direct))))
    return [t.result()]


def _poly_scale(p: Polynomial, m: Mat2) -> float:
    r = max(1.0, frobenius_norm(m))
    return sum(abs(a) * r ** i for i, a in enumerate(p.coeffs))


def _conjugacy_eval_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("conjugacy-eval", 1e-9)
    for p in polys:
        for _ in range(count):
            m = random_matrix(rng)
            q = random_conjugator(rng, 1e2)
            mq = conjugate(q, m)
            diff = distance(eval_P(p, mq), conjugate(q, eval_P(p, m)))
            t.add(diff / (condition_number(q) ** 2 * _poly_scale(p, mq)))
    return [t.result()]


def _semigroup_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("semigroup", 1e-6)
    for p in polys:
        for _ in range(count):
            m = random_matrix(rng, 1.5)
            s = eigen_decompose(m)
            if s.cond_Q > 1e3:
                continue
            k, j = int(rng.integers(0, 5)), int(rng.integers(0, 5))
            inner = iterate_P(p, m, k)
            if inner.overflowed:
                continue
            s_inner = eigen_decompose(inner.last)
            whole = lift_iterate(p, s, k + j)
            split = lift_iterate(p, s_inner, j)
            if not (whole.is_finite() and split.is_finite()):
                continue
            scale = max(s.cond_Q, s_inner.cond_Q) ** 2 * max(1.0, frobenius_norm(whole))
            t.add(distance(whole, split) / scale)
    return [t.result()]


# classification

def _conjugacy_suite(rng, count, polys) -> List[PropertyResult]:
    verdicts = _Tracker("conjugacy", 0.0)
    greens = _Tracker("conjugacy-green", 1e-6)
    for p in polys:
        for _ in range(count):
            m = random_matrix(rng, 2.0)
            q = random_conjugator(rng, 1e2)
            mq = conjugate(q, m)
            a, b = classify_matrix(p, m), classify_matrix(p, mq)
            if MatrixKind.UNRESOLVED not in (a.kind, b.kind):
                verdicts.add(0.0 if a.kind is b.kind else 1.0)
            ga, gb = green_matrix(p, m), green_matrix(p, mq)
            greens.add(abs(ga.value - gb.value) / condition_number(q))
    return [verdicts.result(), greens.result()]


def _band_safe_modulus(rng, band: float) -> float:
    """A modulus in [0, 0.9] or [1.1, 2] or exactly 1."""
    pick = rng.integers(0, 3)
    if pick == 0:
        return rng.uniform(0.0, 0.9)
    if pick == 1:
        return rng.uniform(1.1, 2.0)
    return 1.0


def _complete_invariance_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("complete-invariance", 0.0)
    p = SQUARE
    for _ in range(count):
        l1 = cmath.rect(_band_safe_modulus(rng, 1e-3), rng.uniform(0, 2 * math.pi))
        l2 = cmath.rect(_band_safe_modulus(rng, 1e-3), rng.uniform(0, 2 * math.pi))
        m = matrix_with_spectrum(rng, l1, l2)
        a, b = classify_matrix(p, m), classify_matrix(p, eval_P(p, m))
        if MatrixKind.UNRESOLVED in (a.kind, b.kind):
            continue
        escape_ok = (a.kind is MatrixKind.FATOU_ESCAPING) == (b.kind is MatrixKind.FATOU_ESCAPING)
        julia_ok = (not a.kind.is_julia) or b.kind.is_julia
        t.add(0.0 if escape_ok and julia_ok else 1.0)
    return [t.result()]


# parabolic Jordan fixtures: (p, lam) with p^n(lam) = lam and (p^n)'(lam) = 1
PARABOLIC_JORDANS = (
    (_poly(0, 1, 1), 0.0),
    (_poly(0.25, 0, 1), 0.5),
    (_poly(-0.75, 0, 1), -0.5),
)


def _defective_periodic_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("defective-periodic", 0.0)
    for i in range(count):
        p, lam = PARABOLIC_JORDANS[i % len(PARABOLIC_JORDANS)]
        m = conjugate(random_conjugator(rng, 10.0), Mat2.jordan(lam))
        s = eigen_decompose(m)
        if not (s.kind is SpectrumKind.DEFECTIVE or s.near_defective):
            continue
        if periodic_check(p, m, n_max=4) is None:
            continue
        t.add(0.0 if classify_matrix(p, m).kind is MatrixKind.JULIA2 else 1.0)
    return [t.result()]


def expected_square_class(l1: complex, l2: complex, band: float = 1e-3) -> Optional[str]:
    """Analytic verdict for z^2 outside the band, None when not scored."""
    r1, r2 = sorted((abs(l1), abs(l2)), reverse=True)
    if r1 >= 1.01:
        return "escaping"
    if r1 <= 0.99:
        return "bounded"
    near = [r for r in (r1, r2) if abs(r - 1) <= band]
    if near and r1 <= 1 + band:
        return "julia"
    return None


def _square_dichotomy_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("z2-dichotomy", 0.0)
    p = SQUARE
    for i in range(count):
        if i % 2:
            m = random_matrix(rng)
        else:
            mods = [rng.uniform(0.0, 2.0), 1.0 + rng.uniform(-1e-3, 1e-3)]
            rng.shuffle(mods)
            m = matrix_with_spectrum(
                rng, cmath.rect(mods[0], rng.uniform(0, 2 * math.pi)), cmath.rect(mods[1], rng.uniform(0, 2 * math.pi))
            )
        l1, l2 = eigen_decompose(m).pair
        expected = expected_square_class(l1, l2)
        if expected is None:
            continue
        kind = classify_matrix(p, m).kind
        ok = {
            "escaping": kind is MatrixKind.FATOU_ESCAPING,
            "bounded": kind is MatrixKind.FATOU_BOUNDED,
            "julia": kind.is_julia,
        }[expected]
        t.add(0.0 if ok else 1.0)
    return [t.result()]


def _commuting_julia_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("commuting-julia", 0.0)
    p, q = SQUARE, _poly(0, 0, 0, 0, 1)
    spec = SliceSpec(SliceMode.EIGEN_PLANE, width=4.0, height=4.0, resolution=(200, 200), lambda_fixed=0.5)
    for _ in range(count):
        i, j = int(rng.integers(0, 200)), int(rng.integers(0, 200))
        m = pixel_to_matrix(spec, i, j)
        a, b = classify_matrix(p, m), classify_matrix(q, m)
        if MatrixKind.UNRESOLVED in (a.kind, b.kind):
            continue
        t.add(0.0 if a.kind.is_julia == b.kind.is_julia else 1.0)
    return [t.result()]


# green-boettcher

def _green_equation_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("green-functional-eq", 1e-6)
    for p in polys:
        d = p.degree
        for _ in range(count):
            m = random_matrix(rng, 2.0)
            g = green_matrix(p, m)
            pm = eval_P(p, m)
            if not pm.is_finite():
                continue
            gp = green_matrix(p, pm)
            t.add(max(0.0, abs(gp.value - d * g.value) - (gp.error_bound + d * g.error_bound)))
    return [t.result()]


def _route_agreement_suite(rng, count, polys) -> List[PropertyResult]:
    bound = _Tracker("route-agreement", 0.0)
    close = _Tracker("route-agreement-1e-4", 0.01)
    misses, total = 0, 0
    for p in polys:
        for _ in range(count):
            m = random_matrix(rng, 2.0)
            direct = green_direct(p, m, 20)
            spectral = green_matrix(p, m)
            diff = abs(direct.value - spectral.value)
            bound.add(max(0.0, diff - (direct.error_bound + spectral.error_bound)))
            total += 1
            misses += diff > 1e-4
    if total:
        close.samples = total
        close.worst = misses / total
    return [bound.result(), close.result()]


def _log_growth_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("log-growth", 1e-9)
    for p in polys:
        R = escape_radius(p)
        B = 0.0 if p.is_monomial() and abs(p.leading) == 1 else log_growth_bound(p)
        for _ in range(count):
            l1 = random_polar(rng, R * (1 + 1e-6), 1e6)
            l2 = random_polar(rng, 1e-3, abs(l1))
            m = matrix_with_spectrum(rng, l1, l2)
            rho = spectral_radius(m)
            if not (R < rho < 1e6):
                continue
            t.add(max(0.0, abs(green_matrix(p, m).value - math.log(rho)) - B))
    return [t.result()]


def _vanishing_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("vanishing", 0.0)
    for p in polys:
        for i in range(count):
            if i % 2:
                lams = (complex(rng.uniform(-2, 2)), complex(rng.uniform(-2, 2)))
            else:
                lams = (random_complex(rng, 1.0), random_complex(rng, 1.0))
            m = matrix_with_spectrum(rng, *lams)
            if in_closure_KP(p, m) is not Closure.YES:
                continue
            t.add(green_matrix(p, m).value)
    return [t.result()]


def _omega_sample(rng, p: Polynomial, max_cond: float = 10.0) -> Mat2:
    r = boettcher_radius(p)
    R = escape_radius(p)
    return matrix_with_spectrum(rng, random_polar(rng, 1.2 * r, 10 * R), random_polar(rng, 1.2 * r, 10 * R), max_cond)


def _semiconjugacy_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("semiconjugacy", 1e-7)
    for p in polys:
        for _ in range(count):
            m = _omega_sample(rng, p)
            cond = eigen_decompose(m).cond_Q
            phi = boettcher_matrix(p, m)
            lhs = boettcher_matrix(p, eval_P(p, m))
            rhs = mat_power(phi, p.degree)
            t.add(distance(lhs, rhs) / (cond ** 2 * frobenius_norm(phi) ** p.degree))
    return [t.result()]


def _green_boettcher_link_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("green-boettcher-link", 1e-8)
    for p in polys:
        for _ in range(count):
            m = _omega_sample(rng, p)
            t.add(abs(green_matrix(p, m).value - math.log(spectral_radius(boettcher_matrix(p, m)))))
    return [t.result()]


def _boettcher_conjugacy_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("boettcher-conjugacy", 1e-7)
    for p in polys:
        for _ in range(count):
            m = _omega_sample(rng, p)
            q = random_conjugator(rng, 1e2)
            phi = boettcher_matrix(p, m)
            diff = distance(boettcher_matrix(p, conjugate(q, m)), conjugate(q, phi))
            scale = condition_number(q) ** 2 * eigen_decompose(m).cond_Q * max(1.0, frobenius_norm(phi))
            t.add(diff / scale)
    return [t.result()]


MEAN_VALUE_RADIUS = 1e-3
MEAN_VALUE_POINTS = 64


def _mean_value_suite(rng, count, polys) -> List[PropertyResult]:
    """G restricted to a complex line is harmonic where one eigenvalue dominates."""
    t = _Tracker("mean-value", 1e-4)
    angles = np.linspace(0, 2 * math.pi, MEAN_VALUE_POINTS, endpoint=False)
    for p in polys:
        R = escape_radius(p)
        for _ in range(count):
            l1 = random_polar(rng, 1.1 * R, 10 * R)
            l2 = random_complex(rng, 0.5)
            if green_scalar(p, l1).value - green_scalar(p, l2).value <= 0.5:
                continue
            m = matrix_with_spectrum(rng, l1, l2)
            v = random_matrix(rng, 1.0)
            v = v * (1.0 / frobenius_norm(v))
            center = green_matrix(p, m).value
            ring = [green_matrix(p, m + v * cmath.rect(MEAN_VALUE_RADIUS, a)).value for a in angles]
            t.add(abs(float(np.mean(ring)) - center))
    return [t.result()]


def _unit_spectrum_suite(rng, count, polys) -> List[PropertyResult]:
    t = _Tracker("unit-spectrum-invariance", 1e-9)
    for i in range(count):
        d = 2 + i % 2
        p = Polynomial.monomial(d, cmath.rect(1.0, rng.uniform(0, 2 * math.pi)))
        if not is_unit_circle_preserving(p):
            t.add(math.inf)
            continue
        l1 = cmath.rect(1.0, rng.uniform(0, 2 * math.pi))
        l2 = cmath.rect(rng.uniform(0.0, 1.0), rng.uniform(0, 2 * math.pi))
        q = random_conjugator(rng, 10.0)
        m = conjugate(q, Mat2.diag(l1, l2))
        t.add(abs(spectral_radius(eval_P(p, m)) - 1.0) / condition_number(q) ** 2)
    return [t.result()]


Suite = Callable[[np.random.Generator, int, Sequence[Polynomial]], List[PropertyResult]]

SUITES: Dict[str, Suite] = {
    "escape-radius": _escape_radius_suite,
    "functional-equation": _functional_equation_suite,
    "green-consistency": _green_consistency_suite,
    "scalar-green-functional-eq": _scalar_green_equation_suite,
    "derivative-growth": _derivative_growth_suite,
    "laurent-series": _laurent_suite,
    "reconstruction": _reconstruction_suite,
    "spectral-similarity": _spectral_similarity_suite,
    "norm-dominates": _norm_dominates_suite,
    "det-trace": _det_trace_suite,
    "lift-direct": _lift_direct_suite,
    "conjugacy-eval": _conjugacy_eval_suite,
    "semigroup": _semigroup_suite,
    "conjugacy": _conjugacy_suite,
    "complete-invariance": _complete_invariance_suite,
    "defective-periodic": _defective_periodic_suite,
    "z2-dichotomy": _square_dichotomy_suite,
    "commuting-julia": _commuting_julia_suite,
    "green-functional-eq": _green_equation_suite,
    "route-agreement": _route_agreement_suite,
    "log-growth": _log_growth_suite,
    "vanishing": _vanishing_suite,
    "semiconjugacy": _semiconjugacy_suite,
    "green-boettcher-link": _green_boettcher_link_suite,
    "boettcher-conjugacy": _boettcher_conjugacy_suite,
    "mean-value": _mean_value_suite,
    "unit-spectrum-invariance": _unit_spectrum_suite,
}


def resolve_suites(selection: Iterable[str]) -> List[str]:
    names: List[str] = []
    for item in selection:
        for name in item.split(","):
            name = name.strip()
            if not name:
                continue
            if name == "all":
                names.extend(SUITES)
            elif name in SUITES:
                names.append(name)
            else:
                raise ValueError(f"unknown suite {name!r}; choose from: all, {', '.join(SUITES)}")
    seen = set()
    return [n for n in names if not (n in seen or seen.add(n))]


def run_suite(args) -> List[PropertyResult]:
    name, seed, count, polys = args
    logger.debug("running suite %s (seed=%d, count=%d)", name, seed, count)
    rows = SUITES[name](suite_rng(seed, name), count, polys)
    for row in rows:
        if not row.passed:
            logger.warning("property %s failed: %r > %r", row.name, row.max_violation, row.tolerance)
    return rows


def verify(suites: Iterable[str] = ("all",), seed: int = 0, count: int = 200,
           polys: Optional[Sequence[Polynomial]] = None, jobs: int = 1) -> VerifyReport:
    if count < 0:
        raise ValueError("count must be non-negative")
    names = resolve_suites(suites)
    polys = tuple(polys) if polys else FIXTURE_POLYS
    tasks = [(name, seed, count, polys) for name in names]
    if jobs <= 1 or len(tasks) <= 1:
        results = [run_suite(t) for t in tasks]
    else:
        with mp.Pool(processes=min(jobs, len(tasks))) as pool:
            results = pool.map(run_suite, tasks, chunksize=1)
    report = VerifyReport(seed, count)
    for rows in results:
        report.rows.extend(rows)
    return report
