"""The degree +1 extension operator on Sym(g) and its matrix reports.

The operator is defined on generators by symmetrized double brackets
paired against a dual weight, and extended to higher symmetric powers by
a Leibniz rule.  Two extensions are implemented:

* ``unsigned-derivation`` — the ordinary derivation extension, which is
  well defined on the commutative symmetric product.  This is the
  default.
* ``signed-ordered`` — the graded-sign rule applied to the canonical
  sorted monomial representative.  On a commutative product the signs
  make the rule order-dependent; `leibniz_obstruction` measures exactly
  how inconsistent it is rather than papering over it.

Monomials are identified with averaged symmetrized tensors
(1/k!) sum_sigma u_sigma(1) x ... x u_sigma(k); that single convention
fixes both the coordinates of the generator images and the Gram
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .lie import DualWeight, LieAlgebraData, LieError, killing_form

UNSIGNED = "unsigned-derivation"
SIGNED = "signed-ordered"
CONVENTIONS = (UNSIGNED, SIGNED)

Monomial = Tuple[int, ...]


def _check_convention(convention: str):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown Leibniz convention {convention!r}; use one of {CONVENTIONS}")


class SymBasis:
    """Monomial basis of Sym^k(g): weakly increasing index tuples."""

    def __init__(self, dim: int, degree: int):
        if dim < 1 or degree < 0:
            raise ValueError("need dim >= 1 and degree >= 0")
        self.dim = dim
        self.degree = degree
        self.monomials: Tuple[Monomial, ...] = tuple(
            combinations_with_replacement(range(dim), degree)
        )
        self._index = {m: i for i, m in enumerate(self.monomials)}

    @property
    def size(self) -> int:
        return len(self.monomials)

    def index(self, monomial: Monomial) -> int:
        return self._index[tuple(sorted(monomial))]

    def vector(self, coeffs: Dict[Monomial, Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.size
        for mono, c in coeffs.items():
            out[self.index(mono)] += c
        return out

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"SymBasis(dim={self.dim}, degree={self.degree}, size={self.size})"


class OperatorMatrix:
    """Exact matrix between graded Sym spaces, with degree labels."""

    __slots__ = ("entries", "domain_degree", "codomain_degree", "domain", "codomain")

    def __init__(self, entries: Sequence[Sequence], domain_degree: int,
                 codomain_degree: int, domain: Optional[SymBasis] = None,
                 codomain: Optional[SymBasis] = None):
        self.entries = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.domain_degree = domain_degree
        self.codomain_degree = codomain_degree
        self.domain = domain
        self.codomain = codomain

    @classmethod
    def zero(cls, rows: int, cols: int, domain_degree: int, codomain_degree: int,
             domain=None, codomain=None) -> "OperatorMatrix":
        return cls(linalg.zeros(rows, cols), domain_degree, codomain_degree,
                   domain, codomain)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def as_lists(self) -> linalg.Matrix:
        return [list(row) for row in self.entries]

    def compose(self, inner: "OperatorMatrix") -> "OperatorMatrix":
        """self after inner (matrix product self @ inner)."""
        if inner.codomain_degree != self.domain_degree:
            raise ValueError("degree labels do not chain")
        return OperatorMatrix(
            linalg.mat_mul(self.as_lists(), inner.as_lists()),
            inner.domain_degree, self.codomain_degree,
            inner.domain, self.codomain,
        )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return OperatorMatrix(
            linalg.mat_add(self.as_lists(), other.as_lists()),
            self.domain_degree, self.codomain_degree, self.domain, self.codomain,
        )

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return OperatorMatrix(
            linalg.mat_sub(self.as_lists(), other.as_lists()),
            self.domain_degree, self.codomain_degree, self.domain, self.codomain,
        )

    def scale(self, c) -> "OperatorMatrix":
        return OperatorMatrix(
            linalg.mat_scale(self.as_lists(), c),
            self.domain_degree, self.codomain_degree, self.domain, self.codomain,
        )

    def __neg__(self) -> "OperatorMatrix":
        return self.scale(-1)

    def __eq__(self, other):
        if isinstance(other, OperatorMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def max_abs_entry(self) -> Fraction:
        out = Fraction(0)
        for row in self.entries:
            for x in row:
                if abs(x) > out:
                    out = abs(x)
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def column(self, j: int) -> List[Fraction]:
        return [row[j] for row in self.entries]

    def __repr__(self):
        r, c = self.shape
        return (f"OperatorMatrix({r}x{c}, Sym^{self.domain_degree} -> "
                f"Sym^{self.codomain_degree})")


def delta_on_generator(L: LieAlgebraData, lam: DualWeight, v: int) -> Dict[Monomial, Fraction]:
    """Image of the generator e_v: the symmetric 2-tensor

        S(w_a, w_b) = (1/2) (<lam, [e_a, [e_b, e_v]]> + <lam, [e_b, [e_a, e_v]]>)

    returned in monomial coordinates (the averaged-tensor identification
    sends the coefficient of e_a . e_b, a < b, to 2 S_ab and the square
    monomials to S_aa)."""
    if not 0 <= v < L.dim:
        raise LieError(f"generator index {v} out of range")
    n = L.dim
    basis = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

    def double(a: int, b: int) -> Fraction:
        inner = L.bracket(basis[b], basis[v])
        return lam.pair(L.bracket(basis[a], inner))

    out: Dict[Monomial, Fraction] = {}
    for a in range(n):
        for b in range(a, n):
            s = (double(a, b) + double(b, a)) / 2
            if s == 0:
                continue
            out[(a, b)] = s if a == b else 2 * s
    return out


def _merge(mono: Monomial, extra: Monomial) -> Monomial:
    return tuple(sorted(mono + extra))


def _delta_column(L, lam, mono: Monomial, convention: str,
                  gen_images: List[Dict[Monomial, Fraction]]) -> Dict[Monomial, Fraction]:
    """delta of one monomial as a sparse Sym^(k+1) vector."""
    out: Dict[Monomial, Fraction] = {}
    for i, gen in enumerate(mono):
        sign = 1 if (convention == UNSIGNED or i % 2 == 0) else -1
        rest = mono[:i] + mono[i + 1:]
        for pair, c in gen_images[gen].items():
            key = _merge(rest, pair)
            out[key] = out.get(key, Fraction(0)) + sign * c
    return {k: v for k, v in out.items() if v != 0}


def delta_matrix(L: LieAlgebraData, lam: DualWeight, k: int,
                 convention: str = UNSIGNED) -> OperatorMatrix:
    """Matrix of the extension operator Sym^k -> Sym^(k+1).

    Degree zero maps to zero: a degree +1 derivation kills scalars.
    """
    _check_convention(convention)
    if k < 0:
        raise ValueError("degree must be non-negative")
    domain = SymBasis(L.dim, k)
    codomain = SymBasis(L.dim, k + 1)
    entries = linalg.zeros(codomain.size, domain.size)
    if k > 0:
        gen_images = [delta_on_generator(L, lam, v) for v in range(L.dim)]
        for j, mono in enumerate(domain.monomials):
            for key, value in _delta_column(L, lam, mono, convention, gen_images).items():
                entries[codomain.index(key)][j] = value
    return OperatorMatrix(entries, k, k + 1, domain, codomain)


def leibniz_obstruction(L: LieAlgebraData, lam: DualWeight, k: int,
                        convention: str = SIGNED) -> Fraction:
    """Max |entry| of the order-dependence of the Leibniz rule at degree k.

    For every degree-k monomial and every split into factors s1 . s2, the
    rule is evaluated both as (s1, s2) and as (s2, s1) and the exact
    difference taken.  Zero means the rule is well defined at this degree;
    the unsigned derivation always gives zero, the signed rule need not.
    """
    _check_convention(convention)
    if k < 2:
        raise ValueError("factorizations need degree k >= 2")
    gen_images = [delta_on_generator(L, lam, v) for v in range(L.dim)]

    def delta_of(mono: Monomial) -> Dict[Monomial, Fraction]:
        if len(mono) == 1:
            return gen_images[mono[0]]
        return _delta_column(L, lam, mono, convention, gen_images)

    def rule(s1: Monomial, s2: Monomial) -> Dict[Monomial, Fraction]:
        # delta(s1) . s2 + (-1)^(deg s1) s1 . delta(s2)
        sign = 1 if (convention == UNSIGNED or len(s1) % 2 == 0) else -1
        out: Dict[Monomial, Fraction] = {}
        for key, value in delta_of(s1).items():
            m = _merge(key, s2)
            out[m] = out.get(m, Fraction(0)) + value
        for key, value in delta_of(s2).items():
            m = _merge(key, s1)
            out[m] = out.get(m, Fraction(0)) + sign * value
        return out

    worst = Fraction(0)
    for mono in SymBasis(L.dim, k).monomials:
        seen = set()
        for p in range(1, k):
            for chosen in combinations(range(k), p):
                s1 = tuple(mono[i] for i in chosen)
                s2 = tuple(mono[i] for i in range(k) if i not in chosen)
                if (s1, s2) in seen:
                    continue
                seen.add((s1, s2))
                lhs = rule(s1, s2)
                rhs = rule(s2, s1)
                keys = set(lhs) | set(rhs)
                for key in keys:
                    diff = abs(lhs.get(key, Fraction(0)) - rhs.get(key, Fraction(0)))
                    if diff > worst:
                        worst = diff
    return worst


@dataclass(frozen=True)
class NilpotencyEntry:
    degree: int
    composite: OperatorMatrix
    max_abs: Fraction
    squares_to_zero: bool


@dataclass(frozen=True)
class NilpotencyReport:
    """Exact composites delta_(k+1) o delta_k for k <= k_max.

    `claim_holds` records whether the published nilpotency claim for the
    extension operator survives at every tested degree; it is reported,
    never assumed.
    """

    convention: str
    entries: Tuple[NilpotencyEntry, ...]

    @property
    def claim_holds(self) -> bool:
        return all(e.squares_to_zero for e in self.entries)


def nilpotency_report(L: LieAlgebraData, lam: DualWeight, k_max: int) -> NilpotencyReport:
    """Composites of the unsigned-derivation extension, degree by degree."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    mats = [delta_matrix(L, lam, k, UNSIGNED) for k in range(k_max + 2)]
    entries = []
    for k in range(k_max + 1):
        composite = mats[k + 1].compose(mats[k])
        m = composite.max_abs_entry()
        entries.append(NilpotencyEntry(k, composite, m, m == 0))
    return NilpotencyReport(UNSIGNED, tuple(entries))


def spencer_differential_point_model(L: LieAlgebraData, lam: DualWeight, k: int,
                                     convention: str = UNSIGNED) -> OperatorMatrix:
    """Differential with the base collapsed to a point: the exterior-derivative
    term vanishes and only (-1)^k delta_k survives."""
    mat = delta_matrix(L, lam, k, convention)
    return mat if k % 2 == 0 else -mat


def operator_difference(L: LieAlgebraData, lam: DualWeight, k: int,
                        convention: str = UNSIGNED) -> OperatorMatrix:
    """D_(-lam) - D_(lam), computed directly and checked against the closed
    form -2 (-1)^k delta_lam forced by mirror antisymmetry."""
    direct = (
        spencer_differential_point_model(L, -lam, k, convention)
        - spencer_differential_point_model(L, lam, k, convention)
    )
    expected = delta_matrix(L, lam, k, convention).scale(-2 if k % 2 == 0 else 2)
    if direct != expected:
        raise AssertionError(
            "operator difference deviated from -2(-1)^k delta; "
            "mirror antisymmetry is broken"
        )
    return direct


def sym_gram(L: LieAlgebraData, k: int) -> OperatorMatrix:
    """Gram matrix of the Sym^k monomial basis for the inner product induced
    by the negative Killing form.

    Under the averaged-tensor identification the pairing of two monomials
    is perm(g(u_i, v_j)) / k!, a permanent over the degree-1 Gram matrix.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    B = killing_form(L)
    g = linalg.mat_scale(B, -1)
    if not linalg.is_positive_definite(g):
        raise LieError(
            "negative Killing form is not positive definite; "
            "the symmetric-power inner product needs a compact form"
        )
    basis = SymBasis(L.dim, k)
    entries = linalg.zeros(basis.size, basis.size)
    kfact = factorial(k)
    for i, u in enumerate(basis.monomials):
        for j, v in enumerate(basis.monomials):
            if j < i:
                entries[i][j] = entries[j][i]
                continue
            small = [[g[ua][vb] for vb in v] for ua in u]
            entries[i][j] = linalg.permanent(small) / kfact
    return OperatorMatrix(entries, k, k, basis, basis)
