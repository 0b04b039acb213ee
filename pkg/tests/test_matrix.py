import math

import numpy as np
import pytest

from matjul.errors import SingularMatrixError
from matjul.matrix import (
    Mat2,
    SpectrumKind,
    TolerancePolicy,
    condition_number,
    conjugate,
    distance,
    eigen_decompose,
    eigenvalues,
    frobenius_norm,
    random_conjugator,
    spectral_radius,
)


def test_arithmetic_and_invariants():
    m = Mat2(1, 2, 3, 4)
    assert m.trace() == 5
    assert m.det() == -2
    assert m @ Mat2.identity() == m
    assert distance(m @ m.inverse(), Mat2.identity()) < 1e-14
    assert frobenius_norm(Mat2.identity()) == pytest.approx(math.sqrt(2))


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        Mat2(1, 1, 1, 1).inverse()
    with pytest.raises(SingularMatrixError):
        condition_number(Mat2(1, 2, 2, 4))


def test_overflow_is_reported_as_non_finite():
    big = Mat2.diag(1e200, 1e200)
    assert not (big @ big).is_finite()
    assert spectral_radius(big @ big) == math.inf


def test_eigenvalues_larger_first():
    l1, l2 = eigenvalues(Mat2.diag(0.5, 2))
    assert l1 == pytest.approx(2)
    assert l2 == pytest.approx(0.5)
    r1, r2 = eigenvalues(Mat2(0, 1, -1, 0))
    assert {round(r1.imag), round(r2.imag)} == {1, -1}


def test_decompose_distinct_rebuilds():
    m = Mat2(1, 2, 3, 4)
    s = eigen_decompose(m)
    assert s.kind is SpectrumKind.DISTINCT
    assert not s.near_defective
    assert distance(s.rebuild(), m) < 1e-12 * s.cond_Q * frobenius_norm(m)


def test_decompose_jordan_block():
    s = eigen_decompose(Mat2.jordan(1))
    assert s.kind is SpectrumKind.DEFECTIVE
    assert s.eigenvalues == (1,)
    assert distance(s.rebuild(), Mat2.jordan(1)) < 1e-14
    assert not s.near_defective


def test_decompose_conjugated_jordan_block():
    rng = np.random.default_rng(3)
    q = random_conjugator(rng, 10.0)
    m = conjugate(q, Mat2.jordan(0.5 + 0.25j))
    s = eigen_decompose(m)
    assert s.kind is SpectrumKind.DEFECTIVE or s.near_defective
    assert distance(s.rebuild(), m) < 1e-6


def test_decompose_scalar():
    s = eigen_decompose(Mat2.identity() * 3)
    assert s.kind is SpectrumKind.SCALAR
    assert s.pair == (3, 3)


def test_decompose_non_finite():
    s = eigen_decompose(Mat2(math.inf, 0, 0, 1))
    assert not s.is_finite


def test_tolerance_policy_range():
    with pytest.raises(ValueError):
        TolerancePolicy(eig_split_tol=0)
    with pytest.raises(ValueError):
        TolerancePolicy(scalar_tol=1e-2)


def test_split_tolerance_decides_kind():
    m = Mat2(1, 1, 0, 1 + 1e-7)
    assert eigen_decompose(m).kind is SpectrumKind.DISTINCT
    assert eigen_decompose(m, TolerancePolicy(eig_split_tol=1e-5)).kind is SpectrumKind.DEFECTIVE


def test_spectral_similarity_and_norm():
    rng = np.random.default_rng(11)
    m = Mat2(0.3, -1.2j, 2, 0.7 + 0.1j)
    q = random_conjugator(rng, 50.0)
    assert condition_number(q) <= 50.0
    assert spectral_radius(conjugate(q, m)) == pytest.approx(spectral_radius(m), rel=1e-9)
    assert spectral_radius(m) <= frobenius_norm(m)


def test_to_dict_shapes():
    d = eigen_decompose(Mat2.diag(2, 0.5)).to_dict()
    assert d["kind"] == "Distinct"
    assert d["eigenvalues"] == [[2.0, 0.0], [0.5, 0.0]]
    assert len(d["Q"]) == 2
