"""Command-line entry point.

    toricdefect analyze --input collection.json
    toricdefect verify --trials 5 --seed 7 < collection.json

Reports go to stdout, errors to stderr as JSON objects. Exit status is 0 on
success, 2 for invalid input or violated preconditions, 1 otherwise.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Any, Sequence

from . import __version__
from .collection import analyze, consistent_basis_subcollection
from .counting import overdetermined_count, resultant_degrees
from .documents import (
    analysis_payload,
    count_payload,
    digest,
    mixed_volume_payload,
    parse_document,
    reduction_payload,
    sample_payload,
    verification_payload,
)
from .errors import PreconditionError
from .oracle import DEFAULT_COEFF_BOUND, sample_consistent_system, verify_count
from .polytope import mixed_volume, newton_polytope
from .reduction import reduce

COMMANDS = ("analyze", "reduce", "count", "degrees", "mixed-volume", "verify", "sample")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricdefect", description=__doc__.split("\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="collection JSON file (default: stdin)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coeff-bound", type=int, default=DEFAULT_COEFF_BOUND)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--format", choices=("json", "pretty"), default=None)
    p.add_argument("--version", action="version", version=__version__)
    return p


def execute(command: str, c, args) -> dict[str, Any]:
    if command == "analyze":
        report = analyze(c)
        basis = consistent_basis_subcollection(c) if report.minimal_defect <= 0 else None
        return analysis_payload(report, basis)
    if command == "reduce":
        return reduction_payload(reduce(c))
    if command == "count":
        return count_payload(overdetermined_count(c))
    if command == "degrees":
        return {"degrees": list(resultant_degrees(c).degrees)}
    if command == "mixed-volume":
        return mixed_volume_payload(mixed_volume([newton_polytope(A) for A in c.supports], c.n))
    if command == "verify":
        return verification_payload(verify_count(c, args.trials, args.seed, args.coeff_bound))
    if command == "sample":
        return sample_payload(sample_consistent_system(c, args.seed, args.coeff_bound))
    raise ValueError(command)


def render_pretty(doc: dict[str, Any]) -> str:
    lines = [f"{doc['command']}  ({doc['name'] or 'unnamed'}, {doc['input_digest'][:19]})"]
    width = max((len(k) for k in doc["result"]), default=0)
    for key, value in doc["result"].items():
        if key == "defects":
            shown = ", ".join(f"{d['subset']}:{d['defect']}" for d in value if d["subset"])
            lines.append(f"  {key.ljust(width)}  {shown}")
        elif isinstance(value, (list, dict)):
            lines.append(f"  {key.ljust(width)}  {json.dumps(value)}")
        else:
            lines.append(f"  {key.ljust(width)}  {value}")
    return "\n".join(lines)


def _error(code: str, message: str, path: str = "") -> str:
    return json.dumps({"code": code, "message": message, "path": path}, sort_keys=True)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("pretty" if sys.stdout.isatty() else "json")
    try:
        if args.input:
            with open(args.input) as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            c, name = parse_document(text)
        for w in caught:
            print(_error("warning", str(w.message)), file=sys.stderr)
        result = execute(args.command, c, args)
    except PreconditionError as e:
        print(_error(e.code, e.message, e.path), file=sys.stderr)
        return 2
    except OSError as e:
        print(_error("io", str(e), args.input or ""), file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print(_error("internal", f"{type(e).__name__}: {e}"), file=sys.stderr)
        return 1
    doc = {
        "version": __version__,
        "command": args.command,
        "name": name,
        "flags": {"seed": args.seed, "coeff_bound": args.coeff_bound, "trials": args.trials},
        "input_digest": digest(c),
        "result": result,
    }
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(render_pretty(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
