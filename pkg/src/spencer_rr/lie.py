"""Finite-dimensional Lie algebras given by structure constants.

The bracket table is stored as f[c][a][b] with [e_a, e_b] = sum_c
f[c][a][b] e_c, all entries exact rationals.  Validation checks
antisymmetry and the Jacobi identity triple by triple and reports the
Killing form, whose non-degeneracy is the semisimplicity test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .scalars import to_fraction


class LieError(ValueError):
    pass


class LieValidationError(LieError):
    """Structure constants violate a Lie axiom; carries the failing triple."""

    def __init__(self, kind: str, indices: Tuple[int, ...], detail: str):
        self.kind = kind
        self.indices = indices
        super().__init__(f"{kind} fails at {indices}: {detail}")


@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants plus user-supplied metadata flags.

    `compact` and `trivial_center` cannot be decided from the table alone;
    they are carried as declarations and only semisimplicity is checked.
    """

    dim: int
    f: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    compact: Optional[bool] = None
    trivial_center: Optional[bool] = None

    @classmethod
    def from_table(cls, table, compact=None, trivial_center=None) -> "LieAlgebraData":
        dim = len(table)
        frozen = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in table
        )
        for plane in frozen:
            if len(plane) != dim or any(len(row) != dim for row in plane):
                raise LieError("structure-constant table must be dim x dim x dim")
        return cls(dim, frozen, compact, trivial_center)

    def bracket_basis(self, a: int, b: int) -> List[Fraction]:
        """[e_a, e_b] in basis coordinates."""
        return [self.f[c][a][b] for c in range(self.dim)]

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                for c in range(self.dim):
                    out[c] += self.f[c][a][b] * xa * yb
        return out

    def ad_matrix(self, a: int) -> linalg.Matrix:
        """Matrix of ad(e_a): column b is [e_a, e_b]."""
        return [[self.f[c][a][b] for b in range(self.dim)] for c in range(self.dim)]


def su2() -> LieAlgebraData:
    """so(3) ~ su(2)/center conventions: [e_a, e_b] = sum_c eps_abc e_c."""
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
           (1, 0, 2): -1, (2, 1, 0): -1, (0, 2, 1): -1}
    table = [[[Fraction(eps.get((a, b, c), 0)) for b in range(3)] for a in range(3)]
             for c in range(3)]
    return LieAlgebraData.from_table(table, compact=True, trivial_center=True)


def killing_form(L: LieAlgebraData) -> linalg.Matrix:
    """B_ab = sum_{c,d} f[c][a][d] f[d][b][c] = tr(ad_a ad_b)."""
    n = L.dim
    B = linalg.zeros(n, n)
    for a in range(n):
        for b in range(n):
            acc = Fraction(0)
            for c in range(n):
                for d in range(n):
                    acc += L.f[c][a][d] * L.f[d][b][c]
            B[a][b] = acc
    return B


@dataclass(frozen=True)
class LieValidityReport:
    dim: int
    antisymmetry_ok: bool
    jacobi_ok: bool
    killing: Tuple[Tuple[Fraction, ...], ...]
    killing_det: Fraction
    semisimple: bool
    compact_flag: Optional[bool]
    trivial_center_flag: Optional[bool]


def validate_lie(L: LieAlgebraData) -> LieValidityReport:
    """Check antisymmetry and Jacobi exactly; compute the Killing form.

    Violations raise LieValidationError naming the first failing triple.
    """
    n = L.dim
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if L.f[c][a][b] != -L.f[c][b][a]:
                    raise LieValidationError(
                        "antisymmetry", (c, a, b),
                        f"f[{c}][{a}][{b}] = {L.f[c][a][b]} but "
                        f"f[{c}][{b}][{a}] = {L.f[c][b][a]}",
                    )
    for a in range(n):
        for b in range(n):
            for c in range(n):
                # [a,[b,c]] + [b,[c,a]] + [c,[a,b]] componentwise
                for d in range(n):
                    acc = Fraction(0)
                    for e in range(n):
                        acc += L.f[e][b][c] * L.f[d][a][e]
                        acc += L.f[e][c][a] * L.f[d][b][e]
                        acc += L.f[e][a][b] * L.f[d][c][e]
                    if acc != 0:
                        raise LieValidationError(
                            "jacobi", (a, b, c), f"component {d} sums to {acc}"
                        )
    B = killing_form(L)
    d = linalg.det(B) if n else Fraction(1)
    return LieValidityReport(
        dim=n,
        antisymmetry_ok=True,
        jacobi_ok=True,
        killing=tuple(tuple(row) for row in B),
        killing_det=d,
        semisimple=(d != 0),
        compact_flag=L.compact,
        trivial_center_flag=L.trivial_center,
    )


@dataclass(frozen=True)
class DualWeight:
    """Constraint covector in the dual basis: pairs with e_a via coords[a]."""

    algebra: LieAlgebraData
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise LieError(
                f"weight needs {self.algebra.dim} coordinates, got {len(self.coords)}"
            )
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def pair(self, v: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coords, v)), Fraction(0))

    def __neg__(self) -> "DualWeight":
        return DualWeight(self.algebra, tuple(-c for c in self.coords))

    def scale(self, c) -> "DualWeight":
        c = Fraction(c)
        return DualWeight(self.algebra, tuple(c * x for x in self.coords))


def weight_function(lam: DualWeight) -> Fraction:
    """Constraint strength 1 + |lam|^2, the dual norm taken against the
    negative Killing form so that compact real forms give positive weights."""
    L = lam.algebra
    B = killing_form(L)
    neg_B = linalg.mat_scale(B, -1)
    if linalg.det(neg_B) == 0:
        raise LieError("Killing form is degenerate; dual norm undefined")
    inv = linalg.inverse(neg_B)
    lam_vec = list(lam.coords)
    return Fraction(1) + linalg.dot(lam_vec, linalg.mat_vec(inv, lam_vec))


def load_lie(doc: dict) -> LieAlgebraData:
    """Build an algebra from the JSON document format.

    {"dim": n, "brackets": [[a, b, c, q], ...]} places q e_c inside
    [e_a, e_b] (0-based indices); the mirrored entry is filled in
    automatically, and each (unordered pair, target) may appear once.
    {"builtin": "su2"} expands to the epsilon-tensor algebra.
    """
    if not isinstance(doc, dict):
        raise LieError("lie document must be an object")
    if doc.get("builtin") is not None:
        if set(doc) != {"builtin"}:
            raise LieError("builtin lie documents take no other keys")
        if doc["builtin"] != "su2":
            raise LieError(f"unknown builtin algebra {doc['builtin']!r}")
        return su2()
    unknown = set(doc) - {"dim", "brackets", "compact", "trivial_center"}
    if unknown:
        raise LieError(f"unknown keys in lie document: {sorted(unknown)}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise LieError("lie.dim must be a positive integer")
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise LieError("lie.brackets must be a list of [a, b, c, rational]")
    table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for entry in brackets:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise LieError(f"bad bracket entry {entry!r}")
        a, b, c, q = entry
        for idx in (a, b, c):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise LieError(f"bracket index out of range in {entry!r}")
        if a == b:
            raise LieError(f"bracket [e_{a}, e_{a}] is identically zero")
        key = (min(a, b), max(a, b), c)
        if key in seen:
            raise LieError(f"duplicate bracket entry for pair ({a}, {b}) target {c}")
        seen.add(key)
        value = to_fraction(q)
        table[c][a][b] = value
        table[c][b][a] = -value
    compact = doc.get("compact")
    trivial_center = doc.get("trivial_center")
    for flag, name in ((compact, "compact"), (trivial_center, "trivial_center")):
        if flag is not None and not isinstance(flag, bool):
            raise LieError(f"lie.{name} must be a boolean")
    return LieAlgebraData.from_table(table, compact, trivial_center)
