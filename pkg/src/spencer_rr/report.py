"""Assemble and serialize computation reports.

Reports are plain JSON-native dictionaries built in one place so that the
JSON form is byte-deterministic (sorted keys, exact rationals as "p/q"
strings) and the text form prints the same data in a fixed layout.
"""

from __future__ import annotations

import json
from typing import List

from .graded import format_graded, graded_to_json
from .hodge import perturbation_check
from .inputspec import InputSpec
from .lie import validate_lie, weight_function
from .operators import SIGNED, UNSIGNED, leibniz_obstruction, nilpotency_report
from .riemann_roch import (
    SpencerComplexSpec,
    alternating_chern,
    mirror_compare,
    per_degree_euler,
    total_euler,
)
from .scalars import format_scalar, scalar_to_json
from .verify import diff_summary, paper_diff_table


def build_spencer_spec(inp: InputSpec) -> SpencerComplexSpec:
    return SpencerComplexSpec(
        base_dim=inp.base_dim,
        adjoint_bundle=inp.bundle,
        weight=inp.weight,
        symbolic_params=("a",) if inp.symbolic else (),
    )


def _operator_section(inp: InputSpec, max_degree: int) -> dict:
    out: dict = {}
    if not inp.checks or inp.lie is None or inp.weight is None:
        return out
    L, lam = inp.lie, inp.weight
    if "nilpotency" in inp.checks:
        rep = nilpotency_report(L, lam, max_degree)
        out["nilpotency"] = {
            "convention": rep.convention,
            "per_degree": [
                {
                    "degree": e.degree,
                    "max_abs": str(e.max_abs),
                    "squares_to_zero": e.squares_to_zero,
                }
                for e in rep.entries
            ],
            "claim_holds": rep.claim_holds,
        }
    if "obstruction" in inp.checks:
        rows = []
        for k in range(2, max_degree + 1):
            rows.append({
                "degree": k,
                "signed": str(leibniz_obstruction(L, lam, k, SIGNED)),
                "unsigned": str(leibniz_obstruction(L, lam, k, UNSIGNED)),
            })
        out["obstruction"] = rows
    if "perturbation" in inp.checks:
        rows = []
        for k in range(0, max_degree + 1):
            rep = perturbation_check(L, lam, k)
            rows.append({
                "degree": k,
                "agree": rep.agree,
                "max_abs": str(rep.max_abs),
            })
        out["perturbation"] = rows
    return out


def build_report(inp: InputSpec, max_degree: int = 4) -> dict:
    """Run the requested computations and return the JSON-native report."""
    spec = build_spencer_spec(inp)
    report: dict = {
        "inputs": {
            "base": {"projective": inp.base_dim},
            "bundle": inp.bundle_echo,
            "lie": inp.lie_echo,
            "lambda": inp.weight_echo,
            "checks": list(inp.checks),
        },
        "bundle": {
            "rank": inp.bundle.rank,
            "total_chern": graded_to_json(inp.bundle.chern),
            "total_chern_text": format_graded(inp.bundle.chern),
        },
        "euler": {
            "per_degree": [scalar_to_json(v) for v in per_degree_euler(spec)],
            "per_degree_text": [format_scalar(v) for v in per_degree_euler(spec)],
            "total": scalar_to_json(total_euler(spec)),
            "total_text": format_scalar(total_euler(spec)),
            "alternating_character": graded_to_json(alternating_chern(spec)),
        },
    }
    if inp.lie is not None:
        validity = validate_lie(inp.lie)
        report["lie"] = {
            "dim": validity.dim,
            "killing_det": str(validity.killing_det),
            "semisimple": validity.semisimple,
        }
        if inp.weight is not None:
            report["lie"]["weight_function"] = str(weight_function(inp.weight))
    if "mirror" in inp.checks and inp.weight is not None:
        m = mirror_compare(spec)
        report["mirror"] = {
            "mirror_equal": m.mirror_equal,
            "weight_function": str(m.weight_value),
            "mirror_weight_function": str(m.mirror_weight_value),
        }
    operators = _operator_section(inp, max_degree)
    if operators:
        report["operators"] = operators
    if inp.is_builtin_psu2 and inp.base_dim == 2:
        rows = paper_diff_table()
        report["paper_diff"] = [
            {
                "key": r.key,
                "quantity": r.quantity,
                "published": r.published,
                "computed": r.computed,
                "match": r.match,
            }
            for r in rows
        ]
        report["paper_diff_summary"] = diff_summary(rows)
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _diff_lines(rows: List[dict]) -> List[str]:
    lines = []
    width_key = max(len(r["key"]) for r in rows)
    width_pub = max(len(r["published"]) for r in rows)
    for r in rows:
        flag = "MATCH   " if r["match"] else "MISMATCH"
        lines.append(
            f"  {flag}  {r['key']:<{width_key}}  published: {r['published']:<{width_pub}}"
            f"  computed: {r['computed']}"
        )
    return lines


def report_to_text(report: dict) -> str:
    lines: List[str] = []
    inputs = report["inputs"]
    lines.append(f"base: P^{inputs['base']['projective']}")
    bundle = report["bundle"]
    lines.append(f"bundle: rank {bundle['rank']}, c = {bundle['total_chern_text']}")
    if report.get("lie"):
        lie = report["lie"]
        lines.append(
            f"lie algebra: dim {lie['dim']}, det(Killing) = {lie['killing_det']}, "
            f"semisimple: {lie['semisimple']}"
        )
        if "weight_function" in lie:
            lines.append(f"weight function: {lie['weight_function']}")
    lines.append("")
    lines.append("Euler characteristics:")
    for k, text in enumerate(report["euler"]["per_degree_text"]):
        lines.append(f"  degree {k}: {text}")
    lines.append(f"  total:    {report['euler']['total_text']}")
    if "mirror" in report:
        m = report["mirror"]
        lines.append("")
        lines.append(
            f"mirror comparison: equal = {m['mirror_equal']} "
            f"(weight {m['weight_function']} vs {m['mirror_weight_function']})"
        )
    ops = report.get("operators", {})
    if "nilpotency" in ops:
        lines.append("")
        lines.append(f"nilpotency ({ops['nilpotency']['convention']}):")
        for e in ops["nilpotency"]["per_degree"]:
            verdict = "zero" if e["squares_to_zero"] else f"NONZERO (max |entry| {e['max_abs']})"
            lines.append(f"  degree {e['degree']}: composite is {verdict}")
        lines.append(f"  published nilpotency claim holds: {ops['nilpotency']['claim_holds']}")
    if "obstruction" in ops:
        lines.append("")
        lines.append("Leibniz-rule order dependence (max |entry|):")
        for row in ops["obstruction"]:
            lines.append(
                f"  degree {row['degree']}: signed {row['signed']}, unsigned {row['unsigned']}"
            )
    if "perturbation" in ops:
        lines.append("")
        lines.append("mirror-Laplacian perturbation (direct vs expanded):")
        for row in ops["perturbation"]:
            lines.append(
                f"  degree {row['degree']}: agree = {row['agree']}, max |entry| {row['max_abs']}"
            )
    if "paper_diff" in report:
        lines.append("")
        lines.append("published-computation diff:")
        lines.extend(_diff_lines(report["paper_diff"]))
        s = report["paper_diff_summary"]
        lines.append(
            f"  summary: {s['matches']} match, {s['mismatches']} mismatch "
            f"of {s['rows']} rows"
        )
    return "\n".join(lines) + "\n"


def verify_report() -> dict:
    rows = paper_diff_table()
    return {
        "paper_diff": [
            {
                "key": r.key,
                "quantity": r.quantity,
                "published": r.published,
                "computed": r.computed,
                "match": r.match,
            }
            for r in rows
        ],
        "paper_diff_summary": diff_summary(rows),
    }


def verify_to_text(report: dict) -> str:
    lines = ["published-computation diff:"]
    lines.extend(_diff_lines(report["paper_diff"]))
    s = report["paper_diff_summary"]
    lines.append(
        f"summary: {s['matches']} match, {s['mismatches']} mismatch of {s['rows']} rows"
    )
    return "\n".join(lines) + "\n"
