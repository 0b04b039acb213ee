import json

import pytest

from matjul.matrix import Mat2
from matjul.scalar import Polynomial
from matjul.textio import format_complex, parse_complex, parse_matrix, parse_poly


@pytest.mark.parametrize(
    "text, value",
    [("-1", -1), ("0.25i", 0.25j), ("1-2.5i", 1 - 2.5j), (" 3 ", 3), ("2j", 2j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+", "nan", "inf"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_parse_poly_shorthand_and_json():
    assert parse_poly("0,0,1") == Polynomial((0, 0, 1))
    assert parse_poly("0.25i, 0, 1") == Polynomial((0.25j, 0, 1))
    assert parse_poly("[[-2, 0], [0, 0], [1, 0]]") == Polynomial((-2, 0, 1))


def test_parse_poly_from_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps([[-1, 0], [0, 0], [1, 0]]), encoding="utf-8")
    assert parse_poly(f"@{path}") == Polynomial((-1, 0, 1))
    with pytest.raises(ValueError):
        parse_poly(f"@{tmp_path / 'missing.json'}")


def test_parse_poly_rejects_bad_degree():
    with pytest.raises(ValueError):
        parse_poly("0,1")
    with pytest.raises(ValueError):
        parse_poly("1,1,0")


def test_parse_matrix_forms():
    assert parse_matrix("1;1;0;1") == Mat2(1, 1, 0, 1)
    assert parse_matrix("[[[2,0],[0,0]],[[0,0],[0.5,0]]]") == Mat2.diag(2, 0.5)
    assert parse_matrix('{"matrix": [[1, 0], [0, "1i"]]}') == Mat2.diag(1, 1j)
    with pytest.raises(ValueError):
        parse_matrix("1;2;3")


def test_format_complex():
    assert format_complex(0.5) == "0.500000"
    assert format_complex(1 - 2j, 2) == "1.00-2.00i"
