"""Two-real-parameter slices through matrix space, and render jobs over them."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple
import json

from .config import ClassifyParams
from .errors import PreconditionError, SingularMatrixError
from .matrix import Mat2, condition_number, conjugate
from .scalar import Polynomial
from .textio import complex_from_json, complex_to_json, matrix_from_json, parse_poly, poly_from_json


class SliceMode(str, Enum):
    EIGEN_PLANE = "eigen_plane"
    JORDAN_PLANE = "jordan_plane"
    AFFINE = "affine"


class Quantity(str, Enum):
    CLASSIFICATION = "classification"
    GREEN = "green"
    ESCAPE_TIME = "escape-time"


class OutputFormat(str, Enum):
    PGM = "pgm"
    CSV = "csv"


@dataclass(frozen=True)
class SliceSpec:
    mode: SliceMode
    center: complex = 0j
    width: float = 4.0
    height: float = 4.0
    resolution: Tuple[int, int] = (64, 64)
    q: Mat2 = field(default_factory=Mat2.identity)
    lambda_fixed: complex = 0j
    vary: int = 2
    m0: Mat2 = field(default_factory=Mat2.zero)
    v1: Mat2 = field(default_factory=lambda: Mat2(1, 0, 0, 0))
    v2: Mat2 = field(default_factory=lambda: Mat2(0, 0, 0, 1))

    def __post_init__(self):
        w, h = self.resolution
        if w < 1 or h < 1:
            raise ValueError("resolution must be at least 1x1")
        if not (self.width > 0 and self.height > 0):
            raise ValueError("window width and height must be positive")
        if self.vary not in (1, 2):
            raise ValueError("vary must be 1 or 2")
        if self.mode is not SliceMode.AFFINE:
            try:
                condition_number(self.q)
            except SingularMatrixError:
                raise ValueError("slice conjugator Q must be invertible")

    @property
    def pixel_width(self) -> float:
        return self.width / self.resolution[0]

    @property
    def pixel_height(self) -> float:
        return self.height / self.resolution[1]

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "mode": self.mode.value,
            "center": complex_to_json(self.center),
            "width": self.width,
            "height": self.height,
            "resolution": list(self.resolution),
        }
        if self.mode is SliceMode.AFFINE:
            out.update(m0=self.m0.to_list(), v1=self.v1.to_list(), v2=self.v2.to_list())
        else:
            out["q"] = self.q.to_list()
        if self.mode is SliceMode.EIGEN_PLANE:
            out.update(lambda_fixed=complex_to_json(self.lambda_fixed), vary=self.vary)
        return out


def window_point(spec: SliceSpec, i: int, j: int) -> Tuple[float, float]:
    """(s, t) at the centre of pixel column i, row j; row 0 is the top edge."""
    w, h = spec.resolution
    s = spec.center.real - spec.width / 2 + (i + 0.5) * spec.pixel_width
    t = spec.center.imag + spec.height / 2 - (j + 0.5) * spec.pixel_height
    return s, t


def point_to_pixel(spec: SliceSpec, s: float, t: float) -> Tuple[float, float]:
    """Continuous pixel coordinates of (s, t); pixel (i, j) has centre (i + 0.5, j + 0.5)."""
    x = (s - (spec.center.real - spec.width / 2)) / spec.pixel_width
    y = ((spec.center.imag + spec.height / 2) - t) / spec.pixel_height
    return x, y


def matrix_at(spec: SliceSpec, s: float, t: float) -> Mat2:
    lam = complex(s, t)
    if spec.mode is SliceMode.EIGEN_PLANE:
        pair = (spec.lambda_fixed, lam) if spec.vary == 2 else (lam, spec.lambda_fixed)
        return conjugate(spec.q, Mat2.diag(*pair))
    if spec.mode is SliceMode.JORDAN_PLANE:
        return conjugate(spec.q, Mat2.jordan(lam))
    return spec.m0 + spec.v1 * s + spec.v2 * t


def pixel_to_matrix(spec: SliceSpec, i: int, j: int) -> Mat2:
    w, h = spec.resolution
    if not (0 <= i < w and 0 <= j < h):
        raise PreconditionError(f"pixel ({i}, {j}) outside resolution {w}x{h}")
    return matrix_at(spec, *window_point(spec, i, j))


def _number(data: Dict[str, Any], key: str, default: float) -> float:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"slice field {key!r} must be a number, got {value!r}")
    return float(value)


def slice_from_dict(data: Dict[str, Any]) -> SliceSpec:
    if not isinstance(data, dict):
        raise ValueError("slice description must be a JSON object")
    try:
        mode = SliceMode(data.get("mode", "eigen_plane"))
    except ValueError:
        raise ValueError(f"unknown slice mode {data.get('mode')!r}")
    res = data.get("resolution", [64, 64])
    if isinstance(res, int) and not isinstance(res, bool):
        res = [res, res]
    if not (isinstance(res, list) and len(res) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in res)):
        raise ValueError(f"slice field 'resolution' must be [width, height] integers, got {res!r}")
    kwargs: Dict[str, Any] = dict(
        mode=mode,
        center=complex_from_json(data.get("center", [0.0, 0.0])),
        width=_number(data, "width", 4.0),
        height=_number(data, "height", 4.0),
        resolution=(res[0], res[1]),
    )
    if "q" in data:
        kwargs["q"] = matrix_from_json(data["q"])
    if "lambda_fixed" in data:
        kwargs["lambda_fixed"] = complex_from_json(data["lambda_fixed"])
    if "vary" in data:
        kwargs["vary"] = int(data["vary"])
    for key in ("m0", "v1", "v2"):
        if key in data:
            kwargs[key] = matrix_from_json(data[key])
    return SliceSpec(**kwargs)


def load_slice_data(path: str) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValueError(f"slice file not found: {path}")
    except json.JSONDecodeError as e:
        raise ValueError(f"{path} is not valid JSON: {e}")


def load_slice(path: str) -> SliceSpec:
    return slice_from_dict(load_slice_data(path))


@dataclass(frozen=True)
class RenderJob:
    poly: Polynomial
    slice: SliceSpec
    quantity: Quantity = Quantity.CLASSIFICATION
    params: ClassifyParams = field(default_factory=ClassifyParams)
    out: Optional[str] = None
    fmt: OutputFormat = OutputFormat.PGM

    def with_overrides(self, **changes) -> "RenderJob":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def job_from_dict(data: Dict[str, Any], poly: Optional[Polynomial] = None,
                  params: Optional[ClassifyParams] = None) -> RenderJob:
    """Build a RenderJob from a slice file; ``poly`` wins over a "poly" key."""
    if poly is None:
        if "poly" not in data:
            raise ValueError("render job needs a polynomial")
        raw = data["poly"]
        poly = parse_poly(raw) if isinstance(raw, str) else poly_from_json(raw)
    params = params or ClassifyParams()
    if "budget" in data:
        budget = data["budget"]
        if isinstance(budget, bool) or not isinstance(budget, int):
            raise ValueError(f"slice field 'budget' must be an integer, got {budget!r}")
        params = replace(params, max_iter=budget)
    try:
        quantity = Quantity(data.get("quantity", Quantity.CLASSIFICATION.value))
        fmt = OutputFormat(data.get("format", OutputFormat.PGM.value))
    except ValueError as e:
        raise ValueError(f"invalid render option: {e}")
    return RenderJob(poly, slice_from_dict(data), quantity, params, data.get("out"), fmt)
