"""Command-line front end for matrix polynomial dynamics.

Usage:
  python -m scripts.cli classify --poly "0,0,1" --matrix "1;1;0;1" [--format json|text]
  python -m scripts.cli green --poly "0,0,1" --matrix "2;0;0;0.5" [--direct N] [--json]
  python -m scripts.cli boettcher --poly "-2,0,1" --matrix "3;1;0;3" [--series N]
  python -m scripts.cli render --poly "0,0,1" (--slice-file FILE | --mode ...) --out img.pgm [--jobs N]
  python -m scripts.cli verify [--suite all] [--seed 42] [--count N] [--out verify.csv] [--report-md FILE]

Exit status: 0 on success, 1 on a failed verification or an output error,
2 on usage errors and violated preconditions.
"""
from dataclasses import replace
from typing import List, Optional
import argparse
import json
import logging
import re
import sys

from matjul.classify import classify_matrix
from matjul.config import ClassifyParams, Settings, load_settings
from matjul.errors import MatjulError, OutputBusy
from matjul.green import boettcher_matrix, boettcher_series, green_direct, green_matrix, series_tail_bound
from matjul.matrix import eigen_decompose
from matjul.reports import rs
from matjul.render import render, write_render
from matjul.slices import (
    OutputFormat,
    Quantity,
    RenderJob,
    SliceMode,
    SliceSpec,
    job_from_dict,
    load_slice_data,
)
from matjul.storage import atomic_write_text
from matjul.textio import format_complex, format_matrix, matrix_to_json, parse_complex, parse_matrix, parse_poly
from matjul.verify import SUITES, verify

logger = logging.getLogger("matjul.cli")


class UsageError(ValueError):
    pass


class MatjulParser(argparse.ArgumentParser):
    """ArgumentParser that takes "-1,0,1", "-1;0;0;1" or "-i" as values, not options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d|[ij]($|[^a-z-]))")


def _params(args, settings: Settings) -> ClassifyParams:
    return ClassifyParams(
        max_iter=args.budget if args.budget is not None else settings.budget,
        max_period=args.max_period if args.max_period is not None else settings.max_period,
        julia_band=args.band if args.band is not None else settings.band,
    )


def _require(args, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def cmd_classify(args, settings: Settings) -> int:
    _require(args, "poly", "matrix")
    p, m = parse_poly(args.poly), parse_matrix(args.matrix)
    verdict = classify_matrix(p, m, _params(args, settings))
    if args.format == "json":
        print(json.dumps(verdict.to_dict()))
        return 0
    pair = verdict.spectrum.pair if verdict.spectrum is not None else (complex("nan"), complex("nan"))
    verdicts = []
    for lam, v in zip(pair, verdict.eigen_verdicts):
        verdicts.append({
            "eigenvalue": format_complex(lam),
            "tag": v.kind.value,
            "period": v.period,
            "multiplier_modulus": v.multiplier_modulus,
            "green": v.green.value if v.green is not None else None,
            "distance_estimate": v.distance_estimate,
            "near_boundary": v.near_boundary,
        })
    print(rs.render("classify-text", {
        "poly": str(p),
        "matrix": format_matrix(m),
        "tag": verdict.kind.value,
        "spectrum_kind": verdict.spectrum.kind.value if verdict.spectrum is not None else "unknown",
        "near_defective": verdict.near_defective,
        "verdicts": verdicts,
    }), end="")
    return 0


def cmd_green(args, settings: Settings) -> int:
    _require(args, "poly", "matrix")
    p, m = parse_poly(args.poly), parse_matrix(args.matrix)
    if args.direct is not None:
        result = green_direct(p, m, args.direct)
    else:
        result = green_matrix(p, m, args.budget if args.budget is not None else settings.budget)
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        print(f"{result.value:.6f}")
    return 0


def cmd_boettcher(args, settings: Settings) -> int:
    _require(args, "poly", "matrix")
    p, m = parse_poly(args.poly), parse_matrix(args.matrix)
    out = {"spectrum": eigen_decompose(m).to_dict()}
    if args.series is not None:
        out["phi"] = matrix_to_json(boettcher_series(p, m, args.series))
        out["n"] = args.series
        out["tail_bound"] = series_tail_bound(p, m, args.series)
    else:
        out["phi"] = matrix_to_json(boettcher_matrix(p, m))
    print(json.dumps(out))
    return 0


def _parse_resolution(text: str):
    parts = text.lower().split("x")
    try:
        values = [int(v) for v in parts]
    except ValueError:
        raise UsageError(f"invalid resolution {text!r}; use N or WxH")
    if len(values) == 1:
        values = values * 2
    if len(values) != 2:
        raise UsageError(f"invalid resolution {text!r}; use N or WxH")
    return tuple(values)


def _slice_from_flags(args) -> SliceSpec:
    kwargs = dict(
        mode=SliceMode(args.mode),
        center=parse_complex(args.center),
        width=args.width,
        height=args.height if args.height is not None else args.width,
        resolution=_parse_resolution(args.resolution),
        vary=args.vary,
    )
    if args.lambda_fixed is not None:
        kwargs["lambda_fixed"] = parse_complex(args.lambda_fixed)
    if args.q is not None:
        kwargs["q"] = parse_matrix(args.q)
    for key in ("m0", "v1", "v2"):
        if getattr(args, key) is not None:
            kwargs[key] = parse_matrix(getattr(args, key))
    return SliceSpec(**kwargs)


def build_render_job(args, settings: Settings) -> RenderJob:
    poly = parse_poly(args.poly) if args.poly is not None else None
    params = _params(args, settings)
    if args.slice_file:
        # a "budget" key in the file beats the environment, --budget beats both
        job = job_from_dict(load_slice_data(args.slice_file), poly, params)
        if args.budget is not None:
            job = job.with_overrides(params=replace(job.params, max_iter=args.budget))
    else:
        if poly is None:
            raise UsageError("--poly is required")
        job = RenderJob(poly, _slice_from_flags(args), params=params)
    return job.with_overrides(
        quantity=Quantity(args.quantity) if args.quantity else None,
        fmt=OutputFormat(args.format) if args.format else None,
        out=args.out,
    )


def cmd_render(args, settings: Settings) -> int:
    job = build_render_job(args, settings)
    if not job.out:
        raise UsageError("--out is required")
    jobs = args.jobs if args.jobs is not None else settings.jobs
    result = render(job, jobs=jobs)
    path = write_render(job, result)
    print(path)
    return 0


def cmd_verify(args, settings: Settings) -> int:
    count = args.count if args.count is not None else settings.verify_count
    jobs = args.jobs if args.jobs is not None else settings.jobs
    polys = [parse_poly(args.poly)] if args.poly is not None else None
    report = verify(args.suite, seed=args.seed, count=count, polys=polys, jobs=jobs)
    atomic_write_text(args.out, report.to_csv())
    if args.report_md:
        atomic_write_text(args.report_md, rs.render_markdown("verify-report", report.to_dict()))
    for row in report.failures:
        print(f"FAIL {row.name}: max_violation={row.max_violation!r} tolerance={row.tolerance!r}", file=sys.stderr)
    print(f"{len(report.rows) - len(report.failures)}/{len(report.rows)} properties passed; wrote {args.out}")
    return 0 if report.passed else 1


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--poly", help="ascending coefficients 'a0,a1,...,ad', a JSON list or @file.json")
    sp.add_argument("--budget", type=int, help="iteration budget N")
    sp.add_argument("--max-period", type=int, help="longest attracting cycle searched")
    sp.add_argument("--band", type=float, help="Julia band for distance estimates")


def build_parser() -> argparse.ArgumentParser:
    parser = MatjulParser(prog="matjul", description="Dynamics of matrix polynomials on 2x2 complex matrices")
    parser.add_argument("--log-level", help="logging level (default: MATJUL_LOG_LEVEL or WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="Fatou/Julia verdict for one matrix")
    _add_common(sp)
    sp.add_argument("--matrix", help="'a;b;c;d', JSON or @file.json")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("green", help="matrix Green function")
    _add_common(sp)
    sp.add_argument("--matrix")
    sp.add_argument("--direct", type=int, metavar="N", help="use the direct route with N iterations")
    sp.add_argument("--json", action="store_true", help="print value, route and error bound as JSON")
    sp.set_defaults(func=cmd_green)

    sp = sub.add_parser("boettcher", help="matrix Böttcher coordinate")
    _add_common(sp)
    sp.add_argument("--matrix")
    sp.add_argument("--series", type=int, metavar="N", help="use the truncated Laurent series of order N")
    sp.set_defaults(func=cmd_boettcher)

    sp = sub.add_parser("render", help="render a two-parameter slice")
    _add_common(sp)
    sp.add_argument("--slice-file", help="JSON slice description")
    sp.add_argument("--mode", choices=[m.value for m in SliceMode], default=SliceMode.EIGEN_PLANE.value)
    sp.add_argument("--center", default="0")
    sp.add_argument("--width", type=float, default=4.0)
    sp.add_argument("--height", type=float)
    sp.add_argument("--resolution", default="64")
    sp.add_argument("--lambda-fixed")
    sp.add_argument("--vary", type=int, choices=[1, 2], default=2)
    sp.add_argument("--q", help="slice conjugator")
    sp.add_argument("--m0")
    sp.add_argument("--v1")
    sp.add_argument("--v2")
    sp.add_argument("--quantity", choices=[q.value for q in Quantity])
    sp.add_argument("--format", choices=[f.value for f in OutputFormat])
    sp.add_argument("--out")
    sp.add_argument("--jobs", type=int)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("verify", help="run randomized property suites")
    sp.add_argument("--suite", action="append", default=None,
                    help=f"suite name, comma list or 'all' (repeatable); one of: {', '.join(SUITES)}")
    sp.add_argument("--poly", help="restrict polynomial-indexed suites to this polynomial")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int)
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--out", default="verify.csv")
    sp.add_argument("--report-md")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", "unset") is None:
        args.suite = ["all"]
    try:
        settings = load_settings(log_level=args.log_level)
        logging.basicConfig(level=settings.log_level, format="%(levelname)s %(name)s: %(message)s")
        return args.func(args, settings)
    except (OutputBusy, OSError) as e:
        logger.error("output error: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, MatjulError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
