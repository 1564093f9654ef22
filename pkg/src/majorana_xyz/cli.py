"""Command-line interface: build, verify, distance, classify, sample.

Reports are JSON with sorted keys and no timestamps unless asked for, so
identical invocations produce identical bytes. Exit codes: 0 success, 1 a
check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import os
import sys
from typing import Any, Sequence

from . import analysis
from .code import SCHEMA_VERSION, build_code
from .simulator import DecoderUnsupported, NoiseModel, build_decoder, monte_carlo

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _lattice_size(text: str) -> int:
    try:
        L = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"L must be an integer, got {text!r}")
    if L < 3:
        raise argparse.ArgumentTypeError(f"L must be at least 3, got {L}")
    return L


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be a number, got {text!r}")
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"p must lie in [0, 1], got {p}")
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1,
                        help="worker count for enumeration and sampling (output does not depend on it)")
    common.add_argument("--timestamps", action="store_true", help="add a generation time to the report")
    common.add_argument("--out", default="-", help="output path, '-' for standard output")

    parser = argparse.ArgumentParser(prog="majorana-xyz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="write the code structure as JSON")
    p.add_argument("--L", type=_lattice_size, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the full invariant suite")
    p.add_argument("--L", type=_lattice_size, required=True)
    p.add_argument("--max-weight", type=_non_negative, default=None)
    p.add_argument("--distance-budget", type=_positive, default=None)
    p.add_argument("--cap", type=_positive, default=analysis.DEFAULT_CANDIDATE_CAP,
                   help="maximum number of enumerated candidates")

    p = sub.add_parser("distance", parents=[common], help="certify the code distance")
    p.add_argument("--L", type=_lattice_size, required=True)
    p.add_argument("--budget", type=_positive, default=None, help="largest weight to enumerate")

    p = sub.add_parser("classify", parents=[common], help="exhaustive low-weight error census")
    p.add_argument("--L", type=_lattice_size, required=True)
    p.add_argument("--max-weight", type=_positive, required=True)
    p.add_argument("--cap", type=_positive, default=analysis.DEFAULT_CANDIDATE_CAP)
    p.add_argument("--csv", default=None, help="also write per-weight counts as CSV")

    p = sub.add_parser("sample", parents=[common], help="Monte-Carlo logical failure rate")
    p.add_argument("--L", type=_lattice_size, required=True)
    p.add_argument("--p", type=_probability, required=True)
    p.add_argument("--shots", type=_non_negative, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", default=None, help="also write the result row as CSV")
    return parser


def _report(command: str, parameters: dict[str, Any], results: Any, checks: Sequence[analysis.Check],
            timestamps: bool, warnings: Sequence[str] = ()) -> dict[str, Any]:
    doc = {
        "version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "results": results,
        "checks": [
            {"name": c.name, "pass": c.status == "pass", "status": c.status, "claim": c.claim, "witness": c.detail}
            for c in checks
        ],
        "warnings": list(warnings),
    }
    if timestamps:
        doc["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _exit_code(checks: Sequence[analysis.Check]) -> int:
    return EXIT_CHECK_FAILED if any(c.status == "fail" for c in checks) else EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    code = build_code(args.L)
    _write(args.out, code.to_json() + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    code = build_code(args.L)
    max_w = analysis.default_max_weight(args.L) if args.max_weight is None else args.max_weight
    budget = analysis.default_distance_budget(args.L) if args.distance_budget is None else args.distance_budget
    if budget > code.n:
        raise UsageError(f"distance budget {budget} exceeds n={code.n}")
    report = analysis.verify_all(code, max_weight=max_w, distance_budget=budget, cap=args.cap, threads=args.threads)
    params = {"L": args.L, "max_weight": max_w, "distance_budget": budget, "cap": args.cap}
    warnings = []
    if report.skipped:
        warnings.append("some checks were skipped because the enumeration budget was exceeded")
    doc = _report("verify", params, report.results, report.checks, args.timestamps, warnings)
    doc["budget_exceeded"] = report.skipped
    _write(args.out, dumps(doc))
    return _exit_code(report.checks)


def cmd_distance(args: argparse.Namespace) -> int:
    code = build_code(args.L)
    budget = analysis.default_distance_budget(args.L) if args.budget is None else args.budget
    if budget > code.n:
        raise UsageError(f"budget {budget} exceeds n={code.n}")
    cert = analysis.certify_distance(code, budget, threads=args.threads)
    if cert.d is None:
        check = analysis.Check("distance.equals_L", "pass" if cert.lower_bound <= args.L else "fail", True,
                               cert.as_dict())
    else:
        check = analysis.Check("distance.equals_L", "pass" if cert.d == args.L else "fail", True, cert.as_dict())
    doc = _report("distance", {"L": args.L, "budget": budget}, cert.as_dict(), [check], args.timestamps)
    _write(args.out, dumps(doc))
    return _exit_code([check])


def cmd_classify(args: argparse.Namespace) -> int:
    code = build_code(args.L)
    summary = analysis.classify_exhaustive(code, args.max_weight, cap=args.cap, threads=args.threads)
    checks = analysis.census_checks(summary, code)
    warnings = [] if summary.complete else ["enumeration stopped at the candidate cap"]
    params = {"L": args.L, "max_weight": args.max_weight, "cap": args.cap}
    doc = _report("classify", params, summary.as_dict(), checks, args.timestamps, warnings)
    doc["budget_exceeded"] = not summary.complete
    _write(args.out, dumps(doc))
    if args.csv:
        rows = [[args.L, c.weight, c.candidates, c.detectable, c.gauge, c.logical, c.span_tests]
                for c in summary.per_weight]
        _write(args.csv, _csv_text(["L", "weight", "candidates", "detectable", "gauge", "logical", "span_tests"], rows))
    return _exit_code(checks)


def cmd_sample(args: argparse.Namespace) -> int:
    code = build_code(args.L)
    decoder = build_decoder(code)
    result = monte_carlo(code, decoder, NoiseModel(args.p), args.shots, args.seed, threads=args.threads)
    params = {"L": args.L, "p": args.p, "shots": args.shots, "seed": args.seed}
    results = result.as_dict()
    results["decoder"] = {"t": decoder.t, "table_size": len(decoder)}
    doc = _report("sample", params, results, [], args.timestamps)
    _write(args.out, dumps(doc))
    if args.csv:
        _write(args.csv, _csv_text(result.csv_header(), [result.csv_row()]))
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "distance": cmd_distance,
    "classify": cmd_classify,
    "sample": cmd_sample,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DecoderUnsupported, ValueError, OSError) as exc:
        print(f"majorana-xyz {args.command}: {exc}", file=sys.stderr)
        sys.stdout.write(dumps({"error": {"command": args.command, "message": str(exc), "type": type(exc).__name__}}))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
