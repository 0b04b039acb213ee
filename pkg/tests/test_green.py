import math

import numpy as np
import pytest

from matjul.errors import PreconditionError
from matjul.green import (
    GreenRoute,
    OmegaDomain,
    boettcher_matrix,
    boettcher_series,
    green_direct,
    green_matrix,
    log_growth_bound,
    series_tail_bound,
)
from matjul.matpoly import eval_P
from matjul.matrix import Mat2, conjugate, distance, random_conjugator
from matjul.scalar import Polynomial

SQ = Polynomial((0, 0, 1))
CHEB = Polynomial((-2, 0, 1))


def test_green_matrix_takes_the_larger_eigenvalue():
    g = green_matrix(SQ, Mat2.diag(2, 0.5))
    assert g.value == pytest.approx(math.log(2), abs=1e-12)
    assert g.route is GreenRoute.EIGEN_MAX
    assert green_matrix(SQ, Mat2.diag(3, 0.5j)).value == pytest.approx(math.log(3), abs=1e-12)


def test_green_matrix_vanishes_on_bounded_spectrum():
    g = green_matrix(SQ, Mat2.diag(0.5, 0.3))
    assert g.value == 0.0
    assert g.censored


def test_green_matrix_jordan_uses_eigenvalue_only():
    assert green_matrix(SQ, Mat2.jordan(2)).value == pytest.approx(math.log(2), abs=1e-12)
    assert green_matrix(SQ, Mat2.jordan(1)).value == 0.0


def test_green_matrix_rejects_non_finite():
    with pytest.raises(PreconditionError):
        green_matrix(SQ, Mat2(math.inf, 0, 0, 0))


def test_green_direct_agrees_with_spectral_route():
    for m in (Mat2.diag(2, 0.5), Mat2(1.5, 1, 0.2j, -0.7), Mat2.jordan(1.2)):
        direct = green_direct(SQ, m, 20)
        spectral = green_matrix(SQ, m)
        assert direct.route is GreenRoute.DIRECT
        assert abs(direct.value - spectral.value) <= direct.error_bound + spectral.error_bound


def test_green_direct_switches_to_spectrum_without_overflow():
    g = green_direct(SQ, Mat2.diag(50, 0.1), 40)
    assert g.switched_at is not None
    assert g.value == pytest.approx(math.log(50), abs=1e-9)


def test_green_functional_equation_chebyshev():
    rng = np.random.default_rng(23)
    for _ in range(25):
        m = Mat2(*(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)))
        g = green_matrix(CHEB, m)
        gp = green_matrix(CHEB, eval_P(CHEB, m))
        assert abs(gp.value - 2 * g.value) <= 1e-6 + gp.error_bound + 2 * g.error_bound


def test_boettcher_jordan_fixture():
    phi = boettcher_matrix(CHEB, Mat2(3, 1, 0, 3))
    assert phi.a == pytest.approx(2.61803, abs=1e-4)
    assert phi.b == pytest.approx(1.17082, abs=1e-4)
    assert abs(phi.c) < 1e-12
    assert phi.d == pytest.approx(2.61803, abs=1e-4)


def test_boettcher_semiconjugacy():
    rng = np.random.default_rng(29)
    q = random_conjugator(rng, 10.0)
    m = conjugate(q, Mat2.diag(3 + 1j, -4))
    phi = boettcher_matrix(CHEB, m)
    lhs = boettcher_matrix(CHEB, eval_P(CHEB, m))
    assert distance(lhs, phi @ phi) < 1e-9 * max(1.0, distance(phi @ phi, Mat2.zero()))


def test_boettcher_requires_omega():
    with pytest.raises(PreconditionError):
        boettcher_matrix(CHEB, Mat2.diag(1, 5))
    assert not OmegaDomain.for_polynomial(CHEB).contains(Mat2.diag(1, 5))
    assert OmegaDomain.for_polynomial(CHEB).contains(Mat2.diag(3, 5))
    with pytest.raises(PreconditionError):
        boettcher_matrix(CHEB, Mat2.diag(3, 5), omega=OmegaDomain(1.0))


def test_series_converges_to_boettcher():
    p = Polynomial((0.1, 0, 1))
    m = Mat2.diag(50, 80)
    exact = boettcher_matrix(p, m)
    errors = [distance(boettcher_series(p, m, n), exact) for n in range(1, 5)]
    for a, b in zip(errors, errors[1:]):
        assert b <= a + 1e-12
    assert errors[2] < errors[1]
    assert errors[3] <= 1e-6
    assert series_tail_bound(p, m, 4) < 1e-6


def test_series_tail_bound_needs_large_spectrum():
    assert series_tail_bound(Polynomial((0.1, 0, 1)), Mat2.diag(1, 80), 3) == math.inf


def test_log_growth_bound_square_is_sampling_margin():
    assert log_growth_bound(SQ, radii=8, angles=8) <= 1e-6 + 1e-12
