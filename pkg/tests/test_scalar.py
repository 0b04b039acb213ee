import cmath
import math

import pytest

from matjul.errors import NotEscapingError, PreconditionError
from matjul.scalar import (
    Polynomial,
    boettcher_derivative_scalar,
    boettcher_radius,
    boettcher_scalar,
    checkpoints,
    derivative_growth,
    escape_radius,
    evaluate,
    evaluate_laurent,
    find_attracting_cycle,
    green_scalar,
    is_overflow,
    laurent_coefficients,
    local_degree,
    orbit_classify,
)

SQ = Polynomial((0, 0, 1))
CHEB = Polynomial((-2, 0, 1))
BASILICA = Polynomial((-1, 0, 1))


def test_polynomial_rejects_low_degree_and_zero_leading():
    with pytest.raises(ValueError):
        Polynomial((1, 2))
    with pytest.raises(ValueError):
        Polynomial((0, 0, 0))
    with pytest.raises(ValueError):
        Polynomial((0, float("nan"), 1))


def test_escape_radius_values():
    assert escape_radius(SQ) == 3.0
    assert escape_radius(CHEB) == 5.0


def test_evaluate_overflow_is_in_band():
    assert is_overflow(evaluate(SQ, 1e200))
    assert evaluate(CHEB, 3) == 7


def test_orbit_classify_escape_and_bounded():
    status = orbit_classify(SQ, 2)
    assert status.escaped and status.n == 1
    bounded = orbit_classify(SQ, 0.5, budget=50)
    assert not bounded.escaped and bounded.n == 50
    assert bounded.to_dict()["tag"] == "Bounded"


def test_orbit_classify_rejects_small_radius():
    with pytest.raises(PreconditionError):
        orbit_classify(SQ, 2, radius=1.0)


def test_green_scalar_closed_forms():
    assert green_scalar(SQ, 2).value == pytest.approx(math.log(2), abs=1e-12)
    # z^2 - 2 is conjugate to w^2 through z = w + 1/w
    w = (3 + math.sqrt(5)) / 2
    g = green_scalar(CHEB, 3)
    assert g.value == pytest.approx(math.log(w), abs=1e-12)
    assert g.error_bound < 1e-12


def test_green_scalar_leading_coefficient():
    p = Polynomial.monomial(2, 2.0)
    # phi(z) = 2z, so G(z) = log|2z|
    assert green_scalar(p, 3).value == pytest.approx(math.log(6), abs=1e-12)


def test_green_scalar_censored_inside():
    g = green_scalar(SQ, 0.5, budget=100)
    assert g.value == 0.0 and g.censored


def test_derivative_growth_matches_closed_form():
    n = 20
    closed = math.log(2) * (1 + (n - 1) / 2 ** n)
    assert derivative_growth(SQ, 2, n) == pytest.approx(closed, abs=1e-9)
    assert abs(derivative_growth(SQ, 2, n) - math.log(2)) < 2e-5


def test_derivative_growth_rejects_bounded_orbit():
    with pytest.raises(NotEscapingError):
        derivative_growth(SQ, 0.5, 10, budget=100)


def test_boettcher_radius_chebyshev():
    assert boettcher_radius(CHEB) == pytest.approx(2.0, abs=1e-12)
    assert boettcher_radius(CHEB) <= escape_radius(CHEB)


def test_boettcher_scalar_closed_forms():
    assert boettcher_scalar(SQ, 2 + 1j) == 2 + 1j
    w = (3 + math.sqrt(5)) / 2
    assert abs(boettcher_scalar(CHEB, 3) - w) < 1e-12
    z = 4 - 2j
    expected = (z + cmath.sqrt(z - 2) * cmath.sqrt(z + 2)) / 2
    assert abs(boettcher_scalar(CHEB, z) - expected) < 1e-12


def test_boettcher_functional_equation():
    p = Polynomial((0.25j, 0, 1))
    z = 3 + 2j
    assert abs(boettcher_scalar(p, evaluate(p, z)) - boettcher_scalar(p, z) ** 2) < 1e-10


def test_boettcher_precondition():
    with pytest.raises(PreconditionError):
        boettcher_scalar(CHEB, 1.5)


def test_boettcher_derivative_chebyshev():
    assert boettcher_derivative_scalar(CHEB, 3) == pytest.approx(0.5 * (1 + 3 / math.sqrt(5)), abs=1e-6)


def test_laurent_coefficients_chebyshev():
    # w = z - 1/z - 1/z^3 - ...
    coeffs = laurent_coefficients(CHEB, 3)
    expected = [1, 0, -1, 0, -1]
    assert len(coeffs) == 5
    for got, want in zip(coeffs, expected):
        assert abs(got - want) < 1e-12


def test_laurent_coefficients_quadratic_family():
    c = 0.3 - 0.2j
    coeffs = laurent_coefficients(Polynomial((c, 0, 1)), 3)
    assert abs(coeffs[2] - c / 2) < 1e-12
    assert abs(coeffs[4] - (c / 4 - c * c / 8)) < 1e-12


def test_evaluate_laurent_approaches_boettcher():
    p = Polynomial((0.1, 0, 1))
    z = 100.0
    approx = evaluate_laurent(laurent_coefficients(p, 3), z)
    assert abs(approx - boettcher_scalar(p, z)) < 1e-8


def test_local_degree():
    assert local_degree(SQ, 0) == 2
    assert local_degree(SQ, 1) == 1
    assert local_degree(Polynomial.monomial(3), 0) == 3


def test_checkpoints():
    assert checkpoints(1000) == [16, 32, 64, 128, 256, 512, 1000]
    assert checkpoints(10) == [10]


def test_find_attracting_cycle_fixed_point_and_two_cycle():
    fixed = find_attracting_cycle(SQ, 0.5)
    assert fixed.period == 1
    assert fixed.multiplier_modulus == 0
    assert fixed.local_degree == 2

    two = find_attracting_cycle(BASILICA, 0.1)
    assert two.period == 2
    assert two.multiplier_modulus < 1e-6


def test_find_attracting_cycle_none_for_escape_and_repelling():
    assert find_attracting_cycle(SQ, 2) is None
    # 1 is a repelling fixed point of z^2
    assert find_attracting_cycle(SQ, 1.0, budget=64) is None
