"""Validate JSON slice files before rendering.

Usage:
  python -m scripts.validate_slices --paths FILE [FILE ...] [--autofix] [--report-json FILE]

Exit code 0 on success, 2 if any file fails to load.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional
import argparse
import json
import sys

from matjul.slices import job_from_dict, slice_from_dict


def _number(value: str) -> Optional[float]:
    try:
        return float(value)
    except ValueError:
        return None


def _autofix_file(path: Path) -> bool:
    """Coerce numeric strings in width, height, resolution and budget.

    Returns True if the file was rewritten.
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return False
    if not isinstance(data, dict):
        return False
    changed = False
    for key in ("width", "height"):
        if isinstance(data.get(key), str):
            fixed = _number(data[key])
            if fixed is not None:
                data[key] = fixed
                changed = True
    if isinstance(data.get("budget"), str) and data["budget"].isdigit():
        data["budget"] = int(data["budget"])
        changed = True
    res = data.get("resolution")
    if isinstance(res, str) and res.isdigit():
        data["resolution"] = [int(res), int(res)]
        changed = True
    elif isinstance(res, list):
        fixed_res = [int(v) if isinstance(v, str) and v.isdigit() else v for v in res]
        if fixed_res != res:
            data["resolution"] = fixed_res
            changed = True
    if changed:
        path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return changed


def _check(data: Dict[str, Any]) -> None:
    if "poly" in data:
        job_from_dict(data)
    else:
        slice_from_dict(data)


def validate_slices(paths: List[str], autofix: bool = False) -> List[Dict[str, Any]]:
    results = []
    for p in paths:
        path = Path(p)
        if not path.exists():
            results.append({"path": str(path), "ok": False, "error": "file not found"})
            continue
        if autofix:
            _autofix_file(path)
        try:
            _check(json.loads(path.read_text(encoding="utf-8")))
            results.append({"path": str(path), "ok": True})
        except (ValueError, KeyError, TypeError) as e:
            results.append({"path": str(path), "ok": False, "error": str(e)})
    return results


def main(argv: Optional[List[str]] = None) -> None:
    parser = argparse.ArgumentParser(description="Validate slice files")
    parser.add_argument("--paths", nargs="+", required=True, help="slice JSON files")
    parser.add_argument("--autofix", action="store_true", help="coerce numeric strings before validation")
    parser.add_argument("--report-json", help="write a JSON report of validation results to this file")
    args = parser.parse_args(argv)

    results = validate_slices(args.paths, autofix=args.autofix)

    if args.report_json:
        try:
            Path(args.report_json).write_text(json.dumps(results, indent=2), encoding="utf-8")
        except OSError as e:
            print(f"Failed to write report: {e}", file=sys.stderr)

    failed = [r for r in results if not r.get("ok")]
    if failed:
        for f in failed:
            print(f"Validation failed for {f.get('path')}: {f.get('error')}", file=sys.stderr)
        sys.exit(2)

    print("Validation succeeded for all files")


if __name__ == "__main__":
    main()
