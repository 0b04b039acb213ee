import json
import math
import os
import subprocess
import sys

import pytest

from scripts.cli import build_parser, main

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


def run_cli(args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "scripts.cli"] + args,
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
        env=full_env,
    )


def test_classify_rotation_is_julia2():
    rc = run_cli(["classify", "--poly", "0,0,1", "--matrix", "0;1;-1;0"])
    assert rc.returncode == 0, rc.stderr
    out = json.loads(rc.stdout)
    assert out["tag"] == "Julia2"
    assert [v["tag"] for v in out["eigen_verdicts"]] == ["BoundedUnresolved", "BoundedUnresolved"]


def test_green_prints_six_decimals():
    rc = run_cli(["green", "--poly", "0,0,1", "--matrix", "2;0;0;0.5"])
    assert rc.returncode == 0, rc.stderr
    assert rc.stdout.strip() == "0.693147"


def test_boettcher_jordan_fixture():
    rc = run_cli(["boettcher", "--poly", "-2,0,1", "--matrix", "3;1;0;3"])
    assert rc.returncode == 0, rc.stderr
    phi = json.loads(rc.stdout)["phi"]
    assert phi[0][0][0] == pytest.approx(2.61803, abs=1e-4)
    assert phi[0][1][0] == pytest.approx(1.17082, abs=1e-4)
    assert phi[1][0] == [0.0, 0.0]


def test_boettcher_outside_omega_is_a_usage_error():
    rc = run_cli(["boettcher", "--poly", "-2,0,1", "--matrix", "1;0;0;5"])
    assert rc.returncode == 2
    assert "error" in rc.stderr


def test_leading_minus_values_are_not_options(capsys):
    assert main(["classify", "--poly", "-1,0,1", "--matrix", "0;1;0;0"]) == 0
    assert json.loads(capsys.readouterr().out)["tag"] == "FatouBounded"
    assert main(["green", "--poly", "0,0,1", "--matrix", "-2;0;0;0.5"]) == 0
    assert capsys.readouterr().out.strip() == "0.693147"
    assert main(["classify", "--poly", "0,0,1", "--matrix", "-i;0;0;0.5"]) == 0
    assert json.loads(capsys.readouterr().out)["tag"] == "Julia1"


def test_parser_keeps_negative_shorthands_as_values():
    args = build_parser().parse_args(
        ["render", "--poly", "-2,0,1", "--center", "-0.5+0.2i", "--lambda-fixed", "-.5", "--m0", "-1;0;0;1"]
    )
    assert args.poly == "-2,0,1"
    assert args.center == "-0.5+0.2i"
    assert args.lambda_fixed == "-.5"
    assert args.m0 == "-1;0;0;1"


@pytest.mark.parametrize(
    "args",
    [
        ["classify", "--poly", "0,0,1"],
        ["classify", "--poly", "0,1", "--matrix", "1;0;0;1"],
        ["green", "--poly", "0,0,1", "--matrix", "1;2;3"],
        ["render", "--poly", "0,0,1", "--resolution", "4"],
        ["render", "--poly", "0,0,1", "--resolution", "4x", "--out", "x.pgm"],
        ["verify", "--suite", "nope"],
    ],
)
def test_usage_errors_exit_2(args, capsys):
    assert main(args) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["spin"])
    assert exc.value.code == 2


def test_classify_text_format(capsys):
    assert main(["classify", "--poly", "0,0,1", "--matrix", "2;0;0;0.5", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "class: FatouEscaping" in out
    assert "InteriorAttracting, period 1" in out


def test_green_direct_json(capsys):
    assert main(["green", "--poly", "0,0,1", "--matrix", "2;0;0;0.5", "--direct", "12", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["route"] == "Direct"
    assert abs(out["value"] - math.log(2)) <= out["error_bound"] + 1e-12


def test_render_from_flags(tmp_path, capsys):
    out = tmp_path / "img.pgm"
    rc = main([
        "render", "--poly", "0,0,1", "--mode", "eigen_plane", "--lambda-fixed", "0.5",
        "--resolution", "6x4", "--budget", "100", "--out", str(out),
    ])
    assert rc == 0
    assert capsys.readouterr().out.strip() == str(out)
    assert out.read_bytes().startswith(b"P5\n6 4\n255\n")


def test_render_from_slice_file(tmp_path):
    slice_file = tmp_path / "slice.json"
    slice_file.write_text(json.dumps({
        "mode": "jordan_plane",
        "resolution": 4,
        "poly": [[0, 0], [0, 0], [1, 0]],
        "quantity": "escape-time",
        "format": "csv",
        "budget": 50,
    }), encoding="utf-8")
    out = tmp_path / "slice.csv"
    rc = run_cli(["render", "--slice-file", str(slice_file), "--out", str(out)])
    assert rc.returncode == 0, rc.stderr
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "row,col,s,t,value"
    assert len(lines) == 17


def test_verify_writes_csv_and_markdown(tmp_path):
    csv_path = tmp_path / "verify.csv"
    md_path = tmp_path / "verify.md"
    rc = run_cli([
        "verify", "--suite", "det-trace", "--suite", "norm-dominates", "--seed", "42",
        "--count", "10", "--out", str(csv_path), "--report-md", str(md_path),
    ])
    assert rc.returncode == 0, rc.stderr
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "property,samples,max_violation,tolerance,pass"
    assert [line.split(",")[0] for line in lines[1:]] == ["det-trace", "norm-dominates"]
    assert all(line.endswith(",pass") for line in lines[1:])
    md = md_path.read_text(encoding="utf-8")
    assert md.startswith("# Verification report")
    assert "det-trace" in md


def test_verify_is_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["verify", "--suite", "reconstruction", "--seed", "1", "--count", "5", "--out", str(path)]) == 0
    assert a.read_text(encoding="utf-8") == b.read_text(encoding="utf-8")


def test_budget_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("MATJUL_BUDGET", "77")
    assert main(["classify", "--poly", "0,0,1", "--matrix", "0.5;0;0;0.25"]) == 0
    assert json.loads(capsys.readouterr().out)["budgets"]["max_iter"] == 77
