"""Splitting ring: formal Chern roots adjoined to the cohomology of P^n.

`SplitRing(ring, r)` models Q[x_1..x_r, H] truncated at total degree
n = ring.dim, every generator having degree 1.  Symmetric expressions in
the roots rewrite into elementary symmetric polynomials, which then
substitute to the Chern classes of a concrete bundle — the splitting
principle, executed exactly.

The rewrite also works block-wise (roots partitioned into groups, each
group symmetric separately), which is what a tensor product of two
bundles needs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Sequence, Tuple

from .graded import GradedElement, RingDescriptor
from .scalars import ParamPoly, is_zero


class SplitRing:
    """Workspace for `num_roots` formal roots over Q[H]/(H^(n+1))."""

    def __init__(self, ring: RingDescriptor, num_roots: int):
        if num_roots < 0:
            raise ValueError("number of roots must be non-negative")
        self.ring = ring
        self.num_roots = num_roots
        self._elementary_cache: Dict[Tuple[int, int, int], "SplitElement"] = {}
        self._eprod_cache: Dict[Tuple[int, int, Tuple[int, ...]], "SplitElement"] = {}

    def zero(self) -> "SplitElement":
        return SplitElement(self, {})

    def one(self) -> "SplitElement":
        return self.scalar(1)

    def scalar(self, c) -> "SplitElement":
        key = (0,) * (self.num_roots + 1)
        return SplitElement(self, {key: c})

    def root(self, i: int) -> "SplitElement":
        """The degree-1 generator x_i (0-based)."""
        if not 0 <= i < self.num_roots:
            raise IndexError(f"root index {i} out of range")
        if self.ring.dim < 1:
            return self.zero()
        key = tuple(1 if j == i else 0 for j in range(self.num_roots)) + (0,)
        return SplitElement(self, {key: Fraction(1)})

    def hyperplane(self, power: int = 1) -> "SplitElement":
        if power > self.ring.dim:
            return self.zero()
        key = (0,) * self.num_roots + (power,)
        return SplitElement(self, {key: Fraction(1)})

    def from_graded(self, g: GradedElement) -> "SplitElement":
        if g.ring != self.ring:
            raise ValueError("graded element lives over a different ring")
        coeffs = {}
        for h, c in enumerate(g.coeffs):
            if not is_zero(c):
                coeffs[(0,) * self.num_roots + (h,)] = c
        return SplitElement(self, coeffs)

    def elementary(self, i: int, start: int = 0, size: int | None = None) -> "SplitElement":
        """e_i of the roots in the block [start, start+size)."""
        if size is None:
            size = self.num_roots - start
        cache_key = (start, size, i)
        cached = self._elementary_cache.get(cache_key)
        if cached is not None:
            return cached
        if i == 0:
            out = self.one()
        elif i > size or i > self.ring.dim:
            out = self.zero()
        else:
            coeffs = {}
            for chosen in combinations(range(start, start + size), i):
                key = [0] * (self.num_roots + 1)
                for j in chosen:
                    key[j] = 1
                coeffs[tuple(key)] = Fraction(1)
            out = SplitElement(self, coeffs)
        self._elementary_cache[cache_key] = out
        return out

    def _elementary_product(self, start: int, size: int, diffs: Tuple[int, ...]) -> "SplitElement":
        """Product of e_j^diffs[j-1] over the block, cached per exponent vector."""
        cache_key = (start, size, diffs)
        cached = self._eprod_cache.get(cache_key)
        if cached is not None:
            return cached
        out = self.one()
        for j, d in enumerate(diffs, start=1):
            for _ in range(d):
                out = out * self.elementary(j, start, size)
        self._eprod_cache[cache_key] = out
        return out


class SplitElement:
    """Sparse truncated polynomial in the roots and H.

    Keys are exponent tuples (e_1..e_r, h) with sum <= n; values are exact
    scalars.  Instances are treated as immutable.
    """

    __slots__ = ("split", "coeffs")

    def __init__(self, split: SplitRing, coeffs: dict):
        n = split.ring.dim
        clean = {}
        for key, value in coeffs.items():
            if sum(key) <= n and not is_zero(value):
                clean[key] = value
        self.split = split
        self.coeffs = clean

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "SplitElement"):
        if self.split is not other.split and (
            self.split.ring != other.split.ring
            or self.split.num_roots != other.split.num_roots
        ):
            raise ValueError("split-ring mismatch")

    def __add__(self, other):
        if isinstance(other, SplitElement):
            self._check(other)
            out = dict(self.coeffs)
            for key, value in other.coeffs.items():
                out[key] = out.get(key, Fraction(0)) + value
            return SplitElement(self.split, out)
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self + self.split.scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return SplitElement(self.split, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, SplitElement):
            self._check(other)
            out = dict(self.coeffs)
            for key, value in other.coeffs.items():
                out[key] = out.get(key, Fraction(0)) - value
            return SplitElement(self.split, out)
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self - self.split.scalar(other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return SplitElement(
                self.split, {k: v * other for k, v in self.coeffs.items()}
            )
        if not isinstance(other, SplitElement):
            return NotImplemented
        self._check(other)
        n = self.split.ring.dim
        # Bucket by total degree so pairs beyond the truncation are skipped.
        mine: Dict[int, list] = {}
        for key, value in self.coeffs.items():
            mine.setdefault(sum(key), []).append((key, value))
        theirs: Dict[int, list] = {}
        for key, value in other.coeffs.items():
            theirs.setdefault(sum(key), []).append((key, value))
        out: dict = {}
        for d1, items1 in mine.items():
            for d2, items2 in theirs.items():
                if d1 + d2 > n:
                    continue
                for k1, v1 in items1:
                    for k2, v2 in items2:
                        key = tuple(a + b for a, b in zip(k1, k2))
                        prod = v1 * v2
                        if key in out:
                            out[key] = out[key] + prod
                        else:
                            out[key] = prod
        return SplitElement(self.split, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return SplitElement(self.split, {k: v / q for k, v in self.coeffs.items()})
        return NotImplemented

    def __pow__(self, exp: int) -> "SplitElement":
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.split.one()
        for _ in range(exp):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SplitElement):
            self._check(other)
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- queries ---------------------------------------------------------

    @property
    def ring(self) -> RingDescriptor:
        return self.split.ring

    @property
    def num_roots(self) -> int:
        return self.split.num_roots

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_term(self):
        return self.coeffs.get((0,) * (self.split.num_roots + 1), Fraction(0))

    def permute_roots(self, perm: Sequence[int]) -> "SplitElement":
        """Apply a permutation of the root indices (H is untouched)."""
        out = {}
        for key, value in self.coeffs.items():
            roots = key[:-1]
            new = [0] * len(roots)
            for i, e in enumerate(roots):
                new[perm[i]] = e
            out[tuple(new) + (key[-1],)] = value
        return SplitElement(self.split, out)

    def is_symmetric(self, start: int = 0, size: int | None = None) -> bool:
        """Invariance under permutations of the roots in one block.

        Adjacent transpositions generate the symmetric group, so checking
        them suffices.
        """
        r = self.split.num_roots
        if size is None:
            size = r - start
        identity = list(range(r))
        for i in range(start, start + size - 1):
            perm = identity[:]
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute_roots(perm).coeffs != self.coeffs:
                return False
        return True

    def exp_truncated(self) -> "SplitElement":
        """exp of a nilpotent split element (no constant term)."""
        if not is_zero(self.constant_term()):
            raise ValueError("exp needs a nilpotent argument")
        out = self.split.one()
        power = self.split.one()
        for k in range(1, self.split.ring.dim + 1):
            power = power * self
            if power.is_zero():
                break
            out = out + power / factorial(k)
        return out

    def to_graded(self) -> GradedElement:
        """Convert a root-free element back to the base ring."""
        cs = [Fraction(0)] * (self.split.ring.dim + 1)
        for key, value in self.coeffs.items():
            if any(key[:-1]):
                raise ValueError("element still contains formal roots")
            cs[key[-1]] = value
        return GradedElement(self.split.ring, cs)

    def __repr__(self):
        items = sorted(self.coeffs.items())
        return f"SplitElement({items!r})"


def _block_part(key: Tuple[int, ...], start: int, size: int) -> Tuple[int, ...]:
    return key[start : start + size]


def _eliminate_block(
    elem: SplitElement, start: int, size: int, chern: Sequence[GradedElement]
) -> SplitElement:
    """Rewrite one symmetric block of roots into the supplied Chern classes.

    Repeatedly peel the lexicographically largest block exponent beta; by
    symmetry beta is weakly decreasing, so it is the leading monomial of
    e_1^(b1-b2) e_2^(b2-b3) ... e_size^(b_size) with coefficient one.
    Subtract that product (times the cofactor of beta) and accumulate the
    same cofactor times the substituted Chern-class product.
    """
    split = elem.split
    if len(chern) != size:
        raise ValueError("need one Chern class per root in the block")
    collected = split.zero()
    work = elem
    while True:
        beta = None
        for key in work.coeffs:
            sub = _block_part(key, start, size)
            if any(sub) and (beta is None or sub > beta):
                beta = sub
        if beta is None:
            break
        if list(beta) != sorted(beta, reverse=True):
            raise AssertionError(
                "leading block exponent is not dominant; input was not symmetric"
            )
        cofactor = {}
        for key, value in work.coeffs.items():
            if _block_part(key, start, size) == beta:
                zeroed = (
                    key[:start] + (0,) * size + key[start + size :]
                )
                cofactor[zeroed] = value
        q = SplitElement(split, cofactor)
        diffs = tuple(
            beta[j] - (beta[j + 1] if j + 1 < size else 0) for j in range(size)
        )
        expansion = split._elementary_product(start, size, diffs)
        substituted = GradedElement.one(split.ring)
        for j, d in enumerate(diffs, start=1):
            for _ in range(d):
                substituted = substituted * chern[j - 1]
        work = work - q * expansion
        collected = collected + q * split.from_graded(substituted)
    return work + collected


def symmetrize_blocks(
    elem: SplitElement, blocks: Sequence[Tuple[int, int, Sequence[GradedElement]]]
) -> GradedElement:
    """Rewrite every block of roots into Chern classes; blocks must cover
    all roots.  Each entry is (start, size, [c_1..c_size])."""
    covered = sorted((s, s + z) for s, z, _ in blocks)
    expected = 0
    for lo, hi in covered:
        if lo != expected:
            raise ValueError("blocks must partition the roots")
        expected = hi
    if expected != elem.split.num_roots:
        raise ValueError("blocks must partition the roots")
    for start, size, _ in blocks:
        if not elem.is_symmetric(start, size):
            raise ValueError(
                f"element is not symmetric in roots [{start}, {start + size})"
            )
    work = elem
    for start, size, chern in blocks:
        work = _eliminate_block(work, start, size, list(chern))
    return work.to_graded()


def symmetrize_to_chern(elem: SplitElement, chern: Sequence[GradedElement]) -> GradedElement:
    """Rewrite a fully symmetric element in terms of the given Chern classes.

    `chern[i-1]` is c_i as a base-ring element; the list length must equal
    the number of roots.
    """
    r = elem.split.num_roots
    return symmetrize_blocks(elem, [(0, r, list(chern))])
