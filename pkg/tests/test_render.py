import math

import numpy as np
import pytest

from matjul.classify import MatrixKind
from matjul.config import ClassifyParams
from matjul.matrix import Mat2
from matjul.render import PALETTE, parse_pgm, render, to_csv, to_pgm, write_render
from matjul.scalar import Polynomial
from matjul.slices import OutputFormat, Quantity, RenderJob, SliceMode, SliceSpec, window_point

SQ = Polynomial((0, 0, 1))


def _eigen_job(quantity=Quantity.CLASSIFICATION, res=16, **kw):
    spec = SliceSpec(SliceMode.EIGEN_PLANE, resolution=(res, res), lambda_fixed=0.5)
    return RenderJob(SQ, spec, quantity, ClassifyParams(max_iter=200), **kw)


def test_classification_matches_unit_disc():
    job = _eigen_job()
    result = render(job)
    assert result.shape == (16, 16)
    for j in range(16):
        for i in range(16):
            s, t = window_point(job.slice, i, j)
            r = math.hypot(s, t)
            if r > 1.25:
                assert result.pixels[j, i] == PALETTE[MatrixKind.FATOU_ESCAPING]
            elif r < 0.75:
                assert result.pixels[j, i] == PALETTE[MatrixKind.FATOU_BOUNDED]


def test_parallel_render_is_identical():
    job = _eigen_job(res=8)
    one = render(job, jobs=1)
    two = render(job, jobs=2)
    assert np.array_equal(one.pixels, two.pixels)
    assert one.raw == two.raw


def test_green_on_affine_diagonal_plane():
    spec = SliceSpec(SliceMode.AFFINE, resolution=(8, 8))
    job = RenderJob(SQ, spec, Quantity.GREEN)
    result = render(job)
    for j in range(8):
        for i in range(8):
            s, t = window_point(spec, i, j)
            expected = max(math.log(max(abs(s), 1.0)), math.log(max(abs(t), 1.0)))
            assert result.raw[j][i] == pytest.approx(expected, abs=1e-6)
    assert result.pixels.max() == 255


def test_escape_time_bytes():
    job = _eigen_job(Quantity.ESCAPE_TIME, res=8)
    result = render(job)
    for row, values in zip(result.pixels, result.raw):
        for byte, n in zip(row, values):
            if n is None:
                assert byte == 0
            else:
                assert byte == max(1, 255 - n)
    # the centre of the window stays bounded, the corners escape
    assert result.raw[3][3] is None
    assert result.raw[0][0] is not None


def test_pgm_header_and_body(tmp_path):
    job = _eigen_job(res=8, out=str(tmp_path / "img.pgm"))
    result = render(job)
    data = to_pgm(result.pixels)
    assert data.startswith(b"P5\n8 8\n255\n")
    assert len(data) == len(b"P5\n8 8\n255\n") + 64
    path = write_render(job, result)
    with open(path, "rb") as f:
        assert np.array_equal(parse_pgm(f.read()), result.pixels)


def test_csv_rows(tmp_path):
    spec = SliceSpec(SliceMode.EIGEN_PLANE, resolution=(3, 2), lambda_fixed=0.5)
    job = RenderJob(SQ, spec, Quantity.CLASSIFICATION, fmt=OutputFormat.CSV)
    result = render(job)
    lines = to_csv(job, result).decode("utf-8").splitlines()
    assert lines[0] == "row,col,s,t,value"
    assert len(lines) == 1 + 6
    row, col, s, t, value = lines[1].split(",")
    assert (row, col) == ("0", "0")
    assert (float(s), float(t)) == window_point(spec, 0, 0)
    assert value in {k.value for k in MatrixKind}
    path = write_render(job, result, str(tmp_path / "out.csv"))
    assert open(path, encoding="utf-8").read().splitlines() == lines


def test_write_render_needs_path():
    job = _eigen_job(res=2)
    with pytest.raises(ValueError):
        write_render(job, render(job))


def test_escaping_row_above_bounded_row():
    spec = SliceSpec(SliceMode.JORDAN_PLANE, center=0j, width=4.0, height=4.0, resolution=(1, 4))
    job = RenderJob(SQ, spec)
    result = render(job)
    # rows run top to bottom: t = 1.5, 0.5, -0.5, -1.5
    assert result.raw[0][0] is MatrixKind.FATOU_ESCAPING
    assert result.raw[1][0] is MatrixKind.FATOU_BOUNDED
    assert result.raw[3][0] is MatrixKind.FATOU_ESCAPING
