"""2x2 complex matrices: arithmetic, norms and closed-form Jordan decomposition."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple
import cmath
import math

import numpy as np

from .errors import SingularMatrixError

# |det Q| below this fraction of ||Q||_F^2 counts as singular
SINGULAR_RTOL = 1e-14
NEAR_DEFECTIVE_FACTOR = 1e3


def _abs(z: complex) -> float:
    try:
        return abs(z)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class Mat2:
    """[[a, b], [c, d]] with complex entries."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def from_array(cls, arr) -> "Mat2":
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {arr.shape}")
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> "Mat2":
        return cls(0, 0, 0, 0)

    @classmethod
    def diag(cls, l1: complex, l2: complex) -> "Mat2":
        return cls(l1, 0, 0, l2)

    @classmethod
    def jordan(cls, lam: complex, upper: complex = 1) -> "Mat2":
        return cls(lam, upper, 0, lam)

    @classmethod
    def columns(cls, v: Sequence[complex], w: Sequence[complex]) -> "Mat2":
        return cls(v[0], w[0], v[1], w[1])

    @property
    def entries(self) -> Tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def to_list(self) -> List[List[List[float]]]:
        return [[[z.real, z.imag] for z in row] for row in ((self.a, self.b), (self.c, self.d))]

    def is_finite(self) -> bool:
        return all(cmath.isfinite(z) for z in self.entries)

    def max_abs(self) -> float:
        return max(_abs(z) for z in self.entries)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        try:
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        except OverflowError:
            return overflowed()

    def __mul__(self, s: complex) -> "Mat2":
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    __rmul__ = __mul__

    def trace(self) -> complex:
        return self.a + self.d

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        scale = frobenius_norm(self) ** 2
        if _abs(det) <= SINGULAR_RTOL * scale or det == 0:
            raise SingularMatrixError(f"matrix is singular (det={det})")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def column(self, j: int) -> Tuple[complex, complex]:
        return (self.a, self.c) if j == 0 else (self.b, self.d)


def overflowed() -> Mat2:
    inf = complex(math.inf, math.inf)
    return Mat2(inf, inf, inf, inf)


def mat_add(m: Mat2, n: Mat2) -> Mat2:
    return m + n


def mat_sub(m: Mat2, n: Mat2) -> Mat2:
    return m - n


def mat_mul(m: Mat2, n: Mat2) -> Mat2:
    return m @ n


def mat_scale(s: complex, m: Mat2) -> Mat2:
    return m * s


def frobenius_norm(m: Mat2) -> float:
    try:
        return math.sqrt(sum(abs(z) ** 2 for z in m.entries))
    except OverflowError:
        return math.inf


def distance(m: Mat2, n: Mat2) -> float:
    return frobenius_norm(m - n)


def eigenvalues(m: Mat2) -> Tuple[complex, complex]:
    """Roots of x^2 - tr x + det, larger modulus first.

    The second root comes from det/l1, which avoids cancellation in tr - l1.
    """
    half = m.trace() / 2
    disc = cmath.sqrt(((m.a - m.d) / 2) ** 2 + m.b * m.c)
    plus, minus = half + disc, half - disc
    l1 = plus if _abs(plus) >= _abs(minus) else minus
    if l1 == 0:
        return 0j, 0j
    return l1, m.det() / l1


def spectral_radius(m: Mat2) -> float:
    if not m.is_finite():
        return math.inf
    l1, l2 = eigenvalues(m)
    return max(abs(l1), abs(l2))


def condition_number(q: Mat2) -> float:
    """||Q||_F ||Q^-1||_F, which for 2x2 equals ||Q||_F^2 / |det Q|."""
    det = q.det()
    norm2 = frobenius_norm(q) ** 2
    if det == 0 or abs(det) <= SINGULAR_RTOL * norm2:
        raise SingularMatrixError(f"conjugator is singular (det={det})")
    return norm2 / abs(det)


def conjugate(q: Mat2, m: Mat2) -> Mat2:
    """Q M Q^-1."""
    return q @ m @ q.inverse()


@dataclass(frozen=True)
class TolerancePolicy:
    eig_split_tol: float = 1e-9
    scalar_tol: float = 1e-12

    def __post_init__(self):
        for name in ("eig_split_tol", "scalar_tol"):
            value = getattr(self, name)
            if not (0 < value < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {value}")


DEFAULT_TOLERANCE = TolerancePolicy()


class SpectrumKind(str, Enum):
    DISTINCT = "Distinct"
    DEFECTIVE = "Defective"
    SCALAR = "Scalar"


@dataclass(frozen=True)
class Spectrum:
    kind: SpectrumKind
    eigenvalues: Tuple[complex, ...]
    Q: Mat2
    cond_Q: float
    near_defective: bool = False

    @property
    def pair(self) -> Tuple[complex, complex]:
        """Eigenvalues with multiplicity."""
        if self.kind is SpectrumKind.DISTINCT:
            return self.eigenvalues[0], self.eigenvalues[1]
        return self.eigenvalues[0], self.eigenvalues[0]

    @property
    def is_finite(self) -> bool:
        return all(cmath.isfinite(l) for l in self.eigenvalues)

    def normal_form(self) -> Mat2:
        if self.kind is SpectrumKind.DISTINCT:
            return Mat2.diag(*self.eigenvalues)
        if self.kind is SpectrumKind.DEFECTIVE:
            return Mat2.jordan(self.eigenvalues[0])
        return Mat2.diag(self.eigenvalues[0], self.eigenvalues[0])

    def rebuild(self) -> Mat2:
        return conjugate(self.Q, self.normal_form())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "eigenvalues": [[l.real, l.imag] for l in self.eigenvalues],
            "Q": self.Q.to_list(),
            "cond_Q": self.cond_Q,
            "near_defective": self.near_defective,
        }


def _unit(v: Tuple[complex, complex]) -> Tuple[complex, complex]:
    n = math.hypot(abs(v[0]), abs(v[1]))
    return (v[0] / n, v[1] / n)


def _eigenvector(m: Mat2, lam: complex) -> Tuple[complex, complex]:
    # null vector of M - lam I from whichever row gives the larger candidate
    first = (m.b, lam - m.a)
    second = (lam - m.d, m.c)
    n1 = math.hypot(abs(first[0]), abs(first[1]))
    n2 = math.hypot(abs(second[0]), abs(second[1]))
    return _unit(first if n1 >= n2 else second)


def _top_right_singular(n: Mat2) -> Tuple[complex, complex]:
    """Unit w maximizing ||N w||: top eigenvector of the Hermitian N^H N."""
    p = abs(n.a) ** 2 + abs(n.c) ** 2
    r = abs(n.b) ** 2 + abs(n.d) ** 2
    q = n.a.conjugate() * n.b + n.c.conjugate() * n.d
    mu = (p + r) / 2 + math.sqrt(((p - r) / 2) ** 2 + abs(q) ** 2)
    first = (q, mu - p)
    second = (mu - r, q.conjugate())
    n1 = math.hypot(abs(first[0]), abs(first[1]))
    n2 = math.hypot(abs(second[0]), abs(second[1]))
    if max(n1, n2) == 0:
        return (1 + 0j, 0j)
    return _unit(first if n1 >= n2 else second)


_SQRT_HALF = math.sqrt(0.5)
_FALLBACK_W = (
    (1 + 0j, 0j),
    (0j, 1 + 0j),
    (_SQRT_HALF + 0j, _SQRT_HALF + 0j),
    (_SQRT_HALF + 0j, -_SQRT_HALF + 0j),
    (_SQRT_HALF + 0j, 1j * _SQRT_HALF),
    (_SQRT_HALF + 0j, -1j * _SQRT_HALF),
)


def _jordan_conjugator(n: Mat2) -> Mat2:
    def build(w):
        v = (n.a * w[0] + n.b * w[1], n.c * w[0] + n.d * w[1])
        return Mat2.columns(v, w)

    def quality(q: Mat2) -> float:
        v, w = q.column(0), q.column(1)
        nv = math.hypot(abs(v[0]), abs(v[1]))
        nw = math.hypot(abs(w[0]), abs(w[1]))
        if nv == 0 or nw == 0:
            return 0.0
        return abs(q.det()) / (nv * nw)

    q = build(_top_right_singular(n))
    if quality(q) >= 0.1:
        return q
    return max((build(w) for w in _FALLBACK_W), key=quality)


def eigen_decompose(m: Mat2, tol: Optional[TolerancePolicy] = None) -> Spectrum:
    """Closed-form Jordan decomposition M = Q J Q^-1.

    Distinct roots get unit eigenvectors, a double root with a non-negligible
    nilpotent part gets Q = [N w, w] with N = M - lam I.
    """
    tol = tol or DEFAULT_TOLERANCE
    if not m.is_finite():
        nan = complex(math.nan, math.nan)
        return Spectrum(SpectrumKind.SCALAR, (nan,), Mat2.identity(), 2.0)
    tr = m.trace()
    l1, l2 = eigenvalues(m)
    gap = abs(l1 - l2)
    split = tol.eig_split_tol * max(1.0, abs(tr))
    if gap > split:
        q = Mat2.columns(_eigenvector(m, l1), _eigenvector(m, l2))
        try:
            cond = condition_number(q)
        except SingularMatrixError:
            cond = math.inf
        if math.isfinite(cond):
            near = gap <= NEAR_DEFECTIVE_FACTOR * split
            return Spectrum(SpectrumKind.DISTINCT, (l1, l2), q, cond, near)
    lam = tr / 2
    n = m - Mat2.identity() * lam
    if frobenius_norm(n) <= tol.scalar_tol * max(1.0, frobenius_norm(m)):
        return Spectrum(SpectrumKind.SCALAR, (lam,), Mat2.identity(), 2.0)
    q = _jordan_conjugator(n)
    return Spectrum(SpectrumKind.DEFECTIVE, (lam,), q, condition_number(q), gap > 0)


def random_conjugator(rng: np.random.Generator, max_cond: float = 1e2) -> Mat2:
    """A random complex Q with cond(Q) <= max_cond (rejection sampling)."""
    while True:
        entries = rng.normal(size=4) + 1j * rng.normal(size=4)
        q = Mat2(*entries)
        try:
            if condition_number(q) <= max_cond:
                return q
        except SingularMatrixError:
            continue
