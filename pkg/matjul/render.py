"""Slice rendering: per-pixel classification, Green values or escape times.

Rows are farmed out to a multiprocessing pool and gathered back in row order,
so the output does not depend on the worker count.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, List, Optional, Tuple
import io
import logging
import math
import multiprocessing as mp
import time

import numpy as np

from .classify import MatrixKind, classify_matrix
from .green import green_matrix
from .matrix import eigen_decompose
from .scalar import orbit_classify
from .slices import OutputFormat, Quantity, RenderJob, matrix_at, window_point
from .storage import atomic_write_bytes

logger = logging.getLogger(__name__)

PALETTE = {
    MatrixKind.FATOU_ESCAPING: 255,
    MatrixKind.FATOU_BOUNDED: 0,
    MatrixKind.JULIA1: 128,
    MatrixKind.JULIA2: 64,
    MatrixKind.UNRESOLVED: 192,
}


@dataclass
class RenderResult:
    pixels: np.ndarray
    raw: List[List[Any]]
    quantity: Quantity
    elapsed: float = 0.0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.pixels.shape


def escape_time(job: RenderJob, m) -> Optional[int]:
    """Earliest escape step over the eigenvalues of M, None if none escapes."""
    spectrum = eigen_decompose(m)
    steps = []
    for lam in set(spectrum.pair):
        status = orbit_classify(job.poly, lam, job.params.max_iter)
        if status.escaped:
            steps.append(status.n)
    return min(steps) if steps else None


def pixel_value(job: RenderJob, s: float, t: float) -> Any:
    m = matrix_at(job.slice, s, t)
    if job.quantity is Quantity.CLASSIFICATION:
        return classify_matrix(job.poly, m, job.params).kind
    if job.quantity is Quantity.GREEN:
        if not m.is_finite():
            return math.nan
        return green_matrix(job.poly, m, job.params.max_iter).value
    return escape_time(job, m)


def _render_row(args) -> List[Any]:
    job, j = args
    width = job.slice.resolution[0]
    return [pixel_value(job, *window_point(job.slice, i, j)) for i in range(width)]


def _escape_byte(n: Optional[int]) -> int:
    if n is None:
        return 0
    return max(1, 255 - n)


def to_pixels(quantity: Quantity, raw: List[List[Any]]) -> np.ndarray:
    if quantity is Quantity.CLASSIFICATION:
        return np.array([[PALETTE[v] for v in row] for row in raw], dtype=np.uint8)
    if quantity is Quantity.ESCAPE_TIME:
        return np.array([[_escape_byte(v) for v in row] for row in raw], dtype=np.uint8)
    values = np.array(raw, dtype=float)
    values = np.where(np.isfinite(values), values, 0.0)
    top = values.max() if values.size else 0.0
    if top <= 0:
        return np.zeros(values.shape, dtype=np.uint8)
    return np.rint(255.0 * values / top).astype(np.uint8)


def render(job: RenderJob, jobs: int = 1) -> RenderResult:
    width, height = job.slice.resolution
    tasks = [(job, j) for j in range(height)]
    start = time.perf_counter()
    logger.info("rendering %s %dx%d with %d worker(s)", job.quantity.value, width, height, jobs)
    if jobs <= 1:
        raw = [_render_row(t) for t in tasks]
    else:
        with mp.Pool(processes=jobs) as pool:
            raw = pool.map(_render_row, tasks, chunksize=1)
    elapsed = time.perf_counter() - start
    logger.info("render finished in %.3f s", elapsed)
    return RenderResult(to_pixels(job.quantity, raw), raw, job.quantity, elapsed)


def to_pgm(pixels: np.ndarray) -> bytes:
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(pixels, dtype=np.uint8).tobytes()


def parse_pgm(data: bytes) -> np.ndarray:
    """Inverse of to_pgm for the exact header layout it writes."""
    magic, dims, maxval, body = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError("not an 8-bit P5 image")
    width, height = (int(v) for v in dims.split())
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width)


def _csv_value(quantity: Quantity, v: Any) -> str:
    if quantity is Quantity.CLASSIFICATION:
        return v.value
    if quantity is Quantity.ESCAPE_TIME:
        return "" if v is None else str(v)
    return repr(float(v))


def to_csv(job: RenderJob, result: RenderResult) -> bytes:
    buf = io.StringIO()
    buf.write("row,col,s,t,value\n")
    for j, row in enumerate(result.raw):
        for i, v in enumerate(row):
            s, t = window_point(job.slice, i, j)
            buf.write(f"{j},{i},{s!r},{t!r},{_csv_value(result.quantity, v)}\n")
    return buf.getvalue().encode("utf-8")


def write_render(job: RenderJob, result: RenderResult, path: Optional[str] = None) -> str:
    path = path or job.out
    if not path:
        raise ValueError("render output path is required")
    data = to_pgm(result.pixels) if job.fmt is OutputFormat.PGM else to_csv(job, result)
    atomic_write_bytes(path, data)
    logger.info("wrote %s (%d bytes)", path, len(data))
    return path
