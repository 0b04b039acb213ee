"""Text formats for polynomials and matrices.

Polynomials: JSON array of [re, im] pairs in ascending order, or the shorthand
"a0,a1,...,ad" of complex literals such as ``-1``, ``0.25i`` or ``1-2.5i``.
Matrices: JSON ``[[[re,im],[re,im]],[[re,im],[re,im]]]`` or the shorthand
"a;b;c;d" (row-major). Either form may be given as ``@path.json``.
"""
from pathlib import Path
from typing import Any, List, Union
import cmath
import json

from .matrix import Mat2
from .scalar import Polynomial


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    try:
        z = complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise ValueError(f"invalid complex literal: {text!r}")
    if not cmath.isfinite(z):
        raise ValueError(f"complex literal must be finite: {text!r}")
    return z


def complex_from_json(value: Any) -> complex:
    if isinstance(value, bool):
        raise ValueError(f"invalid complex value: {value!r}")
    if isinstance(value, (int, float)):
        z = complex(value)
    elif isinstance(value, str):
        return parse_complex(value)
    elif isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        z = complex(value[0], value[1])
    else:
        raise ValueError(f"invalid complex value: {value!r}")
    if not cmath.isfinite(z):
        raise ValueError(f"complex value must be finite: {value!r}")
    return z


def complex_to_json(z: complex) -> List[float]:
    return [z.real, z.imag]


def _read_ref(text: str) -> Union[str, Any]:
    """Resolve ``@file`` references to parsed JSON; pass other text through."""
    text = text.strip()
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ValueError(f"file not found: {path}")
        except json.JSONDecodeError as e:
            raise ValueError(f"{path} is not valid JSON: {e}")
    if text.startswith("[") or text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"invalid JSON: {e}")
    return text


def poly_from_json(data: Any) -> Polynomial:
    if isinstance(data, dict):
        data = data.get("coeffs", data.get("poly"))
    if not isinstance(data, list):
        raise ValueError("polynomial JSON must be a list of coefficients")
    return Polynomial(tuple(complex_from_json(v) for v in data))


def poly_to_json(p: Polynomial) -> List[List[float]]:
    return p.to_list()


def parse_poly(text: str) -> Polynomial:
    data = _read_ref(text)
    if isinstance(data, str):
        return Polynomial(tuple(parse_complex(tok) for tok in data.split(",")))
    return poly_from_json(data)


def matrix_from_json(data: Any) -> Mat2:
    if isinstance(data, dict):
        data = data.get("matrix", data.get("entries"))
    if not (isinstance(data, list) and len(data) == 2 and all(isinstance(r, list) and len(r) == 2 for r in data)):
        raise ValueError("matrix JSON must be [[a, b], [c, d]]")
    return Mat2.from_rows([[complex_from_json(v) for v in row] for row in data])


def matrix_to_json(m: Mat2) -> List[List[List[float]]]:
    return m.to_list()


def parse_matrix(text: str) -> Mat2:
    data = _read_ref(text)
    if isinstance(data, str):
        parts = data.split(";")
        if len(parts) != 4:
            raise ValueError(f"matrix shorthand needs four entries 'a;b;c;d', got {text!r}")
        return Mat2(*(parse_complex(tok) for tok in parts))
    return matrix_from_json(data)


def format_complex(z: complex, digits: int = 6) -> str:
    if z.imag == 0:
        return f"{z.real:.{digits}f}"
    return f"{z.real:.{digits}f}{z.imag:+.{digits}f}i"


def format_matrix(m: Mat2, digits: int = 6) -> str:
    rows = ((m.a, m.b), (m.c, m.d))
    return "\n".join("  ".join(format_complex(z, digits) for z in row) for row in rows)
