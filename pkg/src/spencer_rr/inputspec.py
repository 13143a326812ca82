"""Input documents for the compute command: schema validation and loading.

Documents are JSON (canonical) or TOML.  Validation is strict — unknown
keys are rejected and every error names the offending field — so a typo
fails loudly instead of silently computing something else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from .bundles import BundleClass, BundleError
from .graded import GradedElement, RingDescriptor
from .lie import DualWeight, LieAlgebraData, LieError, load_lie, validate_lie
from .scalars import ParamPoly, to_fraction
from .verify import psu2_bundle

ALLOWED_CHECKS = ("mirror", "nilpotency", "obstruction", "perturbation")


class SpecError(ValueError):
    """Schema violation; `path` points at the offending key."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class InputSpec:
    base_dim: int
    bundle: BundleClass
    bundle_echo: dict
    lie: Optional[LieAlgebraData] = None
    lie_echo: Optional[dict] = None
    weight: Optional[DualWeight] = None
    weight_echo: Optional[list] = None
    checks: Tuple[str, ...] = ()
    symbolic: bool = False
    is_builtin_psu2: bool = False


def load_document(path) -> dict:
    """Read JSON or TOML; the format is chosen by suffix, JSON by default."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise SpecError("(file)", f"cannot read {p}: {exc}") from exc
    if p.suffix.lower() == ".toml":
        try:
            import tomllib  # Python >= 3.11
        except ImportError:
            import tomli as tomllib
        try:
            return tomllib.loads(raw.decode("utf-8"))
        except Exception as exc:
            raise SpecError("(file)", f"invalid TOML: {exc}") from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except Exception as exc:
        raise SpecError("(file)", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecError("(file)", "top-level document must be an object")
    return doc


def _rational(value, path: str) -> Fraction:
    if isinstance(value, float):
        raise SpecError(path, "floats are rejected; use an integer or a 'p/q' string")
    try:
        return to_fraction(value)
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc


def _parse_bundle(doc, ring: RingDescriptor):
    if not isinstance(doc, dict):
        raise SpecError("bundle", "must be an object")
    if "builtin" in doc:
        unknown = set(doc) - {"builtin", "a"}
        if unknown:
            raise SpecError("bundle", f"unknown keys {sorted(unknown)}")
        if doc["builtin"] != "psu2":
            raise SpecError("bundle.builtin", f"unknown builtin {doc['builtin']!r}")
        a_raw = doc.get("a", 1)
        if a_raw == "symbolic":
            a = ParamPoly.generator("a")
            symbolic = True
        else:
            a = _rational(a_raw, "bundle.a")
            symbolic = False
        try:
            bundle = psu2_bundle(ring, a)
        except BundleError as exc:
            raise SpecError("bundle", str(exc)) from exc
        return bundle, symbolic, True
    unknown = set(doc) - {"rank", "chern"}
    if unknown:
        raise SpecError("bundle", f"unknown keys {sorted(unknown)}")
    rank = doc.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise SpecError("bundle.rank", "must be a non-negative integer")
    chern_raw = doc.get("chern", [])
    if not isinstance(chern_raw, list):
        raise SpecError("bundle.chern", "must be a list of rationals (c_1, c_2, ...)")
    coeffs = [Fraction(1)]
    for i, entry in enumerate(chern_raw, start=1):
        value = _rational(entry, f"bundle.chern[{i - 1}]")
        if i > rank and value != 0:
            raise SpecError(
                f"bundle.chern[{i - 1}]",
                f"c_{i} must vanish for a rank-{rank} bundle",
            )
        coeffs.append(value)
    try:
        bundle = BundleClass(ring, rank, GradedElement(ring, coeffs))
    except BundleError as exc:
        raise SpecError("bundle", str(exc)) from exc
    return bundle, False, False


def parse_input(doc: dict) -> InputSpec:
    if not isinstance(doc, dict):
        raise SpecError("(document)", "must be an object")
    unknown = set(doc) - {"base", "bundle", "lie", "lambda", "checks"}
    if unknown:
        raise SpecError("(document)", f"unknown keys {sorted(unknown)}")
    if "base" not in doc:
        raise SpecError("base", "missing required key")
    if "bundle" not in doc:
        raise SpecError("bundle", "missing required key")

    base = doc["base"]
    if not isinstance(base, dict) or set(base) != {"projective"}:
        raise SpecError("base", 'must be {"projective": n}')
    n = base["projective"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecError("base.projective", "must be a positive integer")
    ring = RingDescriptor(n)

    bundle, symbolic, is_psu2 = _parse_bundle(doc["bundle"], ring)

    lie = None
    if "lie" in doc:
        try:
            lie = load_lie(doc["lie"])
            validate_lie(lie)
        except LieError as exc:
            raise SpecError("lie", str(exc)) from exc

    weight = None
    weight_echo = None
    if "lambda" in doc:
        if lie is None:
            raise SpecError("lambda", "a weight needs a 'lie' entry to pair against")
        coords_raw = doc["lambda"]
        if not isinstance(coords_raw, list):
            raise SpecError("lambda", "must be a list of rationals")
        coords = [_rational(c, f"lambda[{i}]") for i, c in enumerate(coords_raw)]
        if len(coords) != lie.dim:
            raise SpecError(
                "lambda", f"needs {lie.dim} coordinates, got {len(coords)}"
            )
        weight = DualWeight(lie, tuple(coords))
        weight_echo = [str(c) for c in coords]

    checks: Tuple[str, ...] = ()
    if "checks" in doc:
        raw = doc["checks"]
        if not isinstance(raw, list):
            raise SpecError("checks", "must be a list of check names")
        seen = []
        for i, name in enumerate(raw):
            if name not in ALLOWED_CHECKS:
                raise SpecError(
                    f"checks[{i}]",
                    f"unknown check {name!r}; allowed: {list(ALLOWED_CHECKS)}",
                )
            if name in seen:
                raise SpecError(f"checks[{i}]", f"duplicate check {name!r}")
            seen.append(name)
        checks = tuple(seen)
        needs_weight = set(checks) & {"mirror", "nilpotency", "obstruction", "perturbation"}
        if needs_weight and weight is None:
            raise SpecError(
                "checks", f"{sorted(needs_weight)} need 'lie' and 'lambda' entries"
            )

    return InputSpec(
        base_dim=n,
        bundle=bundle,
        bundle_echo=doc["bundle"],
        lie=lie,
        lie_echo=doc.get("lie"),
        weight=weight,
        weight_echo=weight_echo,
        checks=checks,
        symbolic=symbolic,
        is_builtin_psu2=is_psu2,
    )
