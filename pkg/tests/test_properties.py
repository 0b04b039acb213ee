import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from matjul.classify import classify_matrix
from matjul.green import green_matrix
from matjul.matpoly import eval_P
from matjul.matrix import Mat2, condition_number, conjugate, distance, eigenvalues, frobenius_norm, random_conjugator
from matjul.scalar import Polynomial, boettcher_scalar, escape_radius, evaluate, green_scalar

BASILICA = Polynomial((-1, 0, 1))
RABBIT_ISH = Polynomial((0.25j, 0, 1))

coord = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
points = st.builds(complex, coord, coord)
matrices = st.builds(Mat2, points, points, points, points)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@given(matrices)
def test_eigenvalues_match_trace_and_det(m):
    l1, l2 = eigenvalues(m)
    scale = max(1.0, frobenius_norm(m)) ** 2
    assert abs(l1 + l2 - m.trace()) <= 1e-10 * scale
    assert abs(l1 * l2 - m.det()) <= 1e-10 * scale


@given(matrices, seeds)
@settings(max_examples=50)
def test_eval_commutes_with_conjugation(m, seed):
    q = random_conjugator(np.random.default_rng(seed), 10.0)
    lhs = eval_P(BASILICA, conjugate(q, m))
    rhs = conjugate(q, eval_P(BASILICA, m))
    scale = condition_number(q) ** 2 * max(1.0, frobenius_norm(m)) ** 2
    assert distance(lhs, rhs) <= 1e-11 * scale


@given(points)
def test_escape_radius_doubles_modulus(z):
    R = escape_radius(RABBIT_ISH)
    w = z * (R * 1.01) / max(abs(z), 1e-3)
    assume(abs(w) > R)
    assert abs(evaluate(RABBIT_ISH, w)) >= 2 * abs(w) * (1 - 1e-12)


@given(points)
@settings(max_examples=50, deadline=None)
def test_scalar_green_functional_equation(z):
    g = green_scalar(BASILICA, z)
    gp = green_scalar(BASILICA, evaluate(BASILICA, z))
    assert abs(gp.value - 2 * g.value) <= gp.error_bound + 2 * g.error_bound + 1e-12


@given(matrices)
@settings(max_examples=50, deadline=None)
def test_matrix_green_functional_equation(m):
    g = green_matrix(BASILICA, m)
    gp = green_matrix(BASILICA, eval_P(BASILICA, m))
    assert abs(gp.value - 2 * g.value) <= 1e-6 + gp.error_bound + 2 * g.error_bound


@given(st.floats(min_value=0, max_value=2 * math.pi), st.floats(min_value=1.1, max_value=50))
def test_boettcher_modulus_is_exp_green(theta, r):
    z = complex(r * 2 * math.cos(theta), r * 2 * math.sin(theta))
    assume(abs(z) > escape_radius(BASILICA))
    phi = boettcher_scalar(BASILICA, z)
    assert math.log(abs(phi)) == pytest.approx(green_scalar(BASILICA, z).value, abs=1e-9)


@given(matrices, seeds)
@settings(max_examples=40, deadline=None)
def test_classification_is_conjugation_invariant(m, seed):
    q = random_conjugator(np.random.default_rng(seed), 5.0)
    a = classify_matrix(BASILICA, m)
    b = classify_matrix(BASILICA, conjugate(q, m))
    assume(not a.near_defective and not b.near_defective)
    assume(all(not v.near_boundary for v in a.eigen_verdicts + b.eigen_verdicts))
    assert a.kind is b.kind
