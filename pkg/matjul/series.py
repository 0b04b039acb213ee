"""Truncated power series in one variable, as numpy coefficient arrays.

Index k holds the coefficient of u^k; every operation truncates at ``order``.
"""
import numpy as np

from .errors import SingularMatrixError


def truncate(a: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    n = min(len(a), order + 1)
    out[:n] = a[:n]
    return out


def mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    return truncate(np.convolve(a, b), order)


def power(a: np.ndarray, m: int, order: int) -> np.ndarray:
    result = truncate(np.array([1.0 + 0j]), order)
    base = truncate(a, order)
    while m > 0:
        if m & 1:
            result = mul(result, base, order)
        m >>= 1
        if m:
            base = mul(base, base, order)
    return result


def inverse(a: np.ndarray, order: int) -> np.ndarray:
    """1/a for a series with a[0] != 0."""
    a = truncate(a, order)
    if a[0] == 0:
        raise SingularMatrixError("series has no constant term")
    inv = np.zeros(order + 1, dtype=complex)
    inv[0] = 1 / a[0]
    for k in range(1, order + 1):
        inv[k] = -np.dot(a[1:k + 1], inv[k - 1::-1][:k]) / a[0]
    return inv


def compose(h: np.ndarray, v: np.ndarray, order: int) -> np.ndarray:
    """h(v(u)) for v with zero constant term, by Horner's rule."""
    v = truncate(v, order)
    if v[0] != 0:
        raise ValueError("inner series must vanish at 0")
    h = truncate(h, order)
    acc = np.zeros(order + 1, dtype=complex)
    for coeff in h[::-1]:
        acc = mul(acc, v, order)
        acc[0] += coeff
    return acc
