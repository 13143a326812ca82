"""Command-line interface.

Subcommands:
  compute      run the Euler-characteristic pipeline on an input document
  verify-paper print the diff table against the published PSU(2)/P^2 values
  lie          operator-level reports for a Lie algebra and weight
  selftest     run the built-in invariant suite

Exit codes: 0 success, 1 selftest failure, 2 validation error, 3 internal
consistency failure.  SPENCER_RR_MAX_DEGREE caps the symmetric-power
degree enumerated by the operator reports (default 4).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .hodge import perturbation_check
from .inputspec import SpecError, load_document, parse_input
from .lie import DualWeight, LieError, load_lie, validate_lie, weight_function
from .operators import SIGNED, UNSIGNED, delta_matrix, leibniz_obstruction, nilpotency_report
from .report import (
    build_report,
    report_to_json,
    report_to_text,
    verify_report,
    verify_to_text,
)
from .scalars import to_fraction
from .selftest import run_selftest

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


def _max_degree(override=None) -> int:
    if override is not None:
        return override
    raw = os.environ.get("SPENCER_RR_MAX_DEGREE", "4")
    try:
        value = int(raw)
        if value < 0:
            raise ValueError
    except ValueError:
        raise SpecError("SPENCER_RR_MAX_DEGREE", f"must be a non-negative integer, got {raw!r}")
    return value


def _cmd_compute(args, out) -> int:
    doc = load_document(args.input)
    inp = parse_input(doc)
    report = build_report(inp, max_degree=_max_degree())
    rendered_json = report_to_json(report)
    if args.output:
        Path(args.output).write_text(rendered_json, encoding="utf-8")
    if args.format == "json":
        out.write(rendered_json)
    else:
        out.write(report_to_text(report))
    return EXIT_OK


def _cmd_verify_paper(args, out) -> int:
    report = verify_report()
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write(verify_to_text(report))
    return EXIT_OK


def _parse_lambda(text: str):
    try:
        return [to_fraction(part) for part in text.split(",")]
    except ValueError as exc:
        raise SpecError("--lambda", str(exc)) from exc


def _cmd_lie(args, out) -> int:
    if args.algebra == "su2":
        from .lie import su2

        algebra = su2()
    else:
        doc = load_document(args.algebra)
        try:
            algebra = load_lie(doc)
        except LieError as exc:
            raise SpecError("--algebra", str(exc)) from exc

    try:
        validity = validate_lie(algebra)
    except LieError as exc:
        raise SpecError("--algebra", str(exc)) from exc

    coords = _parse_lambda(args.lam)
    if len(coords) != algebra.dim:
        raise SpecError(
            "--lambda", f"needs {algebra.dim} coordinates, got {len(coords)}"
        )
    lam = DualWeight(algebra, tuple(coords))
    if args.max_degree is not None and args.max_degree < 0:
        raise SpecError("--max-degree", "must be non-negative")
    k_max = _max_degree(args.max_degree)

    out.write(f"algebra: dim {validity.dim}, det(Killing) = {validity.killing_det}, "
              f"semisimple: {validity.semisimple}\n")
    for label, flag in (("compact", validity.compact_flag),
                        ("trivial center", validity.trivial_center_flag)):
        if flag is not None:
            out.write(f"  declared {label}: {flag}\n")
    if validity.semisimple:
        out.write(f"weight function: {weight_function(lam)}\n")

    out.write("\nmirror antisymmetry delta(-lambda) = -delta(lambda):\n")
    for k in range(0, k_max + 1):
        ok = delta_matrix(algebra, -lam, k) == -delta_matrix(algebra, lam, k)
        out.write(f"  degree {k}: {'ok' if ok else 'VIOLATED'}\n")

    rep = nilpotency_report(algebra, lam, k_max)
    out.write(f"\nnilpotency ({rep.convention}):\n")
    for e in rep.entries:
        verdict = "zero" if e.squares_to_zero else f"NONZERO (max |entry| {e.max_abs})"
        out.write(f"  degree {e.degree}: composite is {verdict}\n")
    out.write(f"  published nilpotency claim holds: {rep.claim_holds}\n")

    if k_max >= 2:
        out.write("\nLeibniz-rule order dependence (max |entry|):\n")
        for k in range(2, k_max + 1):
            signed = leibniz_obstruction(algebra, lam, k, SIGNED)
            unsigned = leibniz_obstruction(algebra, lam, k, UNSIGNED)
            out.write(f"  degree {k}: signed {signed}, unsigned {unsigned}\n")

    out.write("\nmirror-Laplacian perturbation (direct vs expanded):\n")
    try:
        reports = [perturbation_check(algebra, lam, k) for k in range(0, k_max + 1)]
    except LieError as exc:
        out.write(f"  skipped: {exc}\n")
    else:
        for rep_k in reports:
            out.write(
                f"  degree {rep_k.degree}: agree = {rep_k.agree}, "
                f"max |entry| {rep_k.max_abs}\n"
            )
    return EXIT_OK


def _cmd_selftest(args, out) -> int:
    return run_selftest(lambda line: out.write(line + "\n"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spencer-rr",
        description="Exact characteristic-class and Riemann-Roch calculator "
                    "for symmetric-power complexes on projective spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="run the pipeline on an input document")
    p_compute.add_argument("--input", required=True, help="JSON or TOML input document")
    p_compute.add_argument("--output", help="also write the JSON report to this file")
    p_compute.add_argument("--format", choices=("json", "text"), default="text")

    p_verify = sub.add_parser(
        "verify-paper",
        help="diff the published PSU(2)/P^2 computation against exact values",
    )
    p_verify.add_argument("--format", choices=("json", "text"), default="text")

    p_lie = sub.add_parser("lie", help="operator-level reports for a Lie algebra")
    p_lie.add_argument("--algebra", required=True,
                       help="'su2' or a path to a structure-constant JSON document")
    p_lie.add_argument("--lambda", dest="lam", required=True,
                       help="comma-separated weight coordinates, e.g. 1,0,0")
    p_lie.add_argument("--max-degree", type=int, default=None,
                       help="cap for the symmetric-power degree (default: "
                            "SPENCER_RR_MAX_DEGREE or 4)")

    sub.add_parser("selftest", help="run the built-in invariant suite")
    return parser


_COMMANDS = {
    "compute": _cmd_compute,
    "verify-paper": _cmd_verify_paper,
    "lie": _cmd_lie,
    "selftest": _cmd_selftest,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    try:
        return _COMMANDS[args.command](args, out)
    except (SpecError, LieError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except AssertionError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
