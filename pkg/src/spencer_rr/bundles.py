"""Vector-bundle calculus on P^n via the splitting principle.

A bundle is formal data: a rank and a total Chern class with unit constant
term.  Chern characters, Todd classes, duals, tensor products, symmetric
and exterior powers and Adams operations are all computed exactly.

Symmetric and exterior powers run through two independent routes — formal
Chern roots in the splitting ring, and Adams-operation recursions — and
the results are required to agree before anything is returned.  The
redundancy is deliberate: the plethysm conventions in the literature are
easy to get wrong, and the double computation turns a convention slip
into a hard failure instead of a wrong number.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import List

from . import newton
from .graded import GradedElement, RingDescriptor, hyperplane
from .scalars import is_zero
from .splitting import SplitElement, SplitRing, symmetrize_blocks, symmetrize_to_chern


class BundleError(ValueError):
    """Inconsistent bundle data (bad rank, bad Chern classes)."""


class InternalCheckError(AssertionError):
    """A dual-route consistency check failed; indicates a bug, not bad input."""


class BundleClass:
    """Formal vector bundle: rank plus total Chern class on P^n."""

    __slots__ = ("ring", "rank", "chern")

    def __init__(self, ring: RingDescriptor, rank: int, chern: GradedElement):
        if not isinstance(rank, int) or rank < 0:
            raise BundleError(f"rank must be a non-negative integer, got {rank!r}")
        if chern.ring != ring:
            raise BundleError("Chern class lives over a different ring")
        if chern.coefficient(0) != 1:
            raise BundleError(
                f"total Chern class must have constant term 1, got {chern.coefficient(0)}"
            )
        for i in range(rank + 1, ring.dim + 1):
            if not is_zero(chern.coefficient(i)):
                raise BundleError(
                    f"c_{i} is nonzero but the rank is only {rank}"
                )
        self.ring = ring
        self.rank = rank
        self.chern = chern

    def chern_class(self, i: int) -> GradedElement:
        """c_i as a base-ring element."""
        return self.chern.component(i)

    def __eq__(self, other):
        if isinstance(other, BundleClass):
            return (
                self.ring == other.ring
                and self.rank == other.rank
                and self.chern == other.chern
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.rank, self.chern))

    def __repr__(self):
        return f"BundleClass(rank={self.rank}, c={self.chern})"


class ChernRoots:
    """Formal Chern roots x_1..x_r bound to one bundle."""

    def __init__(self, bundle: BundleClass):
        self.bundle = bundle
        self.split = SplitRing(bundle.ring, bundle.rank)
        self.roots = [self.split.root(i) for i in range(bundle.rank)]

    def symmetrize(self, elem: SplitElement) -> GradedElement:
        chern = [self.bundle.chern_class(i) for i in range(1, self.bundle.rank + 1)]
        return symmetrize_to_chern(elem, chern)


def line_bundle(ring: RingDescriptor, degree) -> BundleClass:
    """O(d): rank one, c_1 = d*H."""
    return BundleClass(ring, 1, GradedElement.one(ring) + degree * hyperplane(ring))


def trivial_bundle(ring: RingDescriptor, rank: int = 1) -> BundleClass:
    return BundleClass(ring, rank, GradedElement.one(ring))


def tangent_projective(n: int) -> BundleClass:
    """Tangent bundle of P^n: rank n, total Chern class (1+H)^(n+1)."""
    if not isinstance(n, int) or n < 0:
        raise BundleError("projective dimension must be a non-negative integer")
    ring = RingDescriptor(n)
    c = (GradedElement.one(ring) + hyperplane(ring)) ** (n + 1)
    return BundleClass(ring, n, c)


def _power_sums(E: BundleClass, upto: int) -> List[GradedElement]:
    es = [E.chern_class(i) for i in range(1, min(E.rank, E.ring.dim) + 1)]
    return newton.power_sums_from_elementary(es, upto, GradedElement.zero(E.ring))


def chern_character(E: BundleClass) -> GradedElement:
    """ch(E) = rank + sum_j p_j / j! with p_j the power sums of the roots."""
    n = E.ring.dim
    ch = GradedElement.scalar(E.ring, E.rank)
    for j, p in enumerate(_power_sums(E, n), start=1):
        ch = ch + p / factorial(j)
    return ch


def adams(E: BundleClass, k: int) -> GradedElement:
    """Chern character of the Adams operation: every root scaled by k,
    i.e. p_j replaced by k^j p_j."""
    if not isinstance(k, int) or k < 1:
        raise BundleError("Adams operations are indexed by positive integers")
    n = E.ring.dim
    ch = GradedElement.scalar(E.ring, E.rank)
    for j, p in enumerate(_power_sums(E, n), start=1):
        ch = ch + p * Fraction(k**j, factorial(j))
    return ch


def bundle_from_ch(ring: RingDescriptor, rank: int, ch: GradedElement) -> BundleClass:
    """Reconstruct rank + Chern classes from a Chern character (exact)."""
    if ch.coefficient(0) != rank:
        raise InternalCheckError(
            f"character has degree-0 term {ch.coefficient(0)} but rank {rank}"
        )
    ps = [ch.component(j) * factorial(j) for j in range(1, ring.dim + 1)]
    es = newton.elementary_from_power_sums(
        ps, ring.dim, GradedElement.one(ring), GradedElement.zero(ring)
    )
    total = GradedElement.one(ring)
    for e in es:
        total = total + e
    return BundleClass(ring, rank, total)


def dual(E: BundleClass) -> BundleClass:
    """Dual bundle: c_i(E*) = (-1)^i c_i(E)."""
    cs = [c if d % 2 == 0 else -1 * c for d, c in enumerate(E.chern.coeffs)]
    return BundleClass(E.ring, E.rank, GradedElement(E.ring, cs))


def direct_sum(E: BundleClass, F: BundleClass) -> BundleClass:
    """Whitney sum: ranks add, total Chern classes multiply."""
    if E.ring != F.ring:
        raise BundleError("bundles live over different rings")
    return BundleClass(E.ring, E.rank + F.rank, E.chern * F.chern)


def tensor(E: BundleClass, F: BundleClass) -> BundleClass:
    """Tensor product, Chern classes from the pairwise root sums x_i + y_j.

    The product of (1 + x_i + y_j) over all pairs is expanded in a joint
    splitting ring and rewritten block-by-block into the Chern classes of
    the two factors.  ch(E (x) F) = ch(E) ch(F) is checked afterwards.
    """
    if E.ring != F.ring:
        raise BundleError("bundles live over different rings")
    ring = E.ring
    r, s = E.rank, F.rank
    if r == 0 or s == 0:
        return BundleClass(ring, 0, GradedElement.one(ring))
    split = SplitRing(ring, r + s)
    product = split.one()
    for i in range(r):
        for j in range(s):
            product = product * (split.one() + split.root(i) + split.root(r + j))
    total = symmetrize_blocks(
        product,
        [
            (0, r, [E.chern_class(i) for i in range(1, r + 1)]),
            (r, s, [F.chern_class(i) for i in range(1, s + 1)]),
        ],
    )
    result = BundleClass(ring, r * s, total)
    if chern_character(result) != chern_character(E) * chern_character(F):
        raise InternalCheckError("tensor product violated ch multiplicativity")
    return result


def sym_characters_adams(E: BundleClass, kmax: int) -> List[GradedElement]:
    """ch(Sym^k E) for k = 0..kmax via k s_k = sum psi^i s_(k-i)."""
    psi = {i: adams(E, i) for i in range(1, kmax + 1)}
    out = [GradedElement.one(E.ring)]
    for k in range(1, kmax + 1):
        acc = GradedElement.zero(E.ring)
        for i in range(1, k + 1):
            acc = acc + psi[i] * out[k - i]
        out.append(acc / k)
    return out


def ext_characters_adams(E: BundleClass, kmax: int) -> List[GradedElement]:
    """ch(Lambda^k E) for k = 0..kmax via the alternating Adams recursion."""
    psi = {i: adams(E, i) for i in range(1, kmax + 1)}
    out = [GradedElement.one(E.ring)]
    for k in range(1, kmax + 1):
        acc = GradedElement.zero(E.ring)
        for i in range(1, k + 1):
            term = psi[i] * out[k - i]
            acc = acc - term if i % 2 == 0 else acc + term
        out.append(acc / k)
    return out


def sym_power(E: BundleClass, k: int) -> BundleClass:
    """Sym^k E: rank C(r+k-1, k); character from the splitting ring, checked
    against the Adams recursion."""
    if not isinstance(k, int) or k < 0:
        raise BundleError("symmetric power index must be a non-negative integer")
    ring = E.ring
    if k == 0:
        return trivial_bundle(ring)
    if E.rank == 0:
        return BundleClass(ring, 0, GradedElement.one(ring))
    roots = ChernRoots(E)
    total_ch = roots.split.zero()
    for multiset in combinations_with_replacement(range(E.rank), k):
        linear = roots.split.zero()
        for i in multiset:
            linear = linear + roots.roots[i]
        total_ch = total_ch + linear.exp_truncated()
    ch_split = roots.symmetrize(total_ch)
    ch_adams = sym_characters_adams(E, k)[k]
    if ch_split != ch_adams:
        raise InternalCheckError(
            f"Sym^{k}: splitting-ring and Adams characters disagree"
        )
    return bundle_from_ch(ring, comb(E.rank + k - 1, k), ch_split)


def ext_power(E: BundleClass, k: int) -> BundleClass:
    """Lambda^k E: rank C(r, k); dual-route character like sym_power."""
    if not isinstance(k, int) or k < 0:
        raise BundleError("exterior power index must be a non-negative integer")
    if k > E.rank:
        raise BundleError(f"exterior power {k} exceeds the rank {E.rank}")
    ring = E.ring
    if k == 0:
        return trivial_bundle(ring)
    roots = ChernRoots(E)
    total_ch = roots.split.zero()
    for subset in combinations(range(E.rank), k):
        linear = roots.split.zero()
        for i in subset:
            linear = linear + roots.roots[i]
        total_ch = total_ch + linear.exp_truncated()
    ch_split = roots.symmetrize(total_ch)
    ch_adams = ext_characters_adams(E, k)[k]
    if ch_split != ch_adams:
        raise InternalCheckError(
            f"Lambda^{k}: splitting-ring and Adams characters disagree"
        )
    return bundle_from_ch(ring, comb(E.rank, k), ch_split)


def sym_characters_generating(E: BundleClass, kmax: int) -> List[GradedElement]:
    """ch(Sym^k E) for k = 0..kmax read off the generating function
    prod_i (1 - t e^(x_i))^(-1), expanded as a t-series in the splitting
    ring and symmetrized coefficient by coefficient.  Independent of both
    routes used inside sym_power; meant for cross-checks."""
    roots = ChernRoots(E)
    series = [roots.split.one()] + [roots.split.zero()] * kmax
    for i in range(E.rank):
        root_exp = [roots.split.one()]
        for m in range(1, kmax + 1):
            root_exp.append((roots.roots[i] * m).exp_truncated())
        new = [roots.split.zero()] * (kmax + 1)
        for d in range(kmax + 1):
            if series[d].is_zero():
                continue
            for m in range(kmax + 1 - d):
                new[d + m] = new[d + m] + series[d] * root_exp[m]
        series = new
    return [roots.symmetrize(c) for c in series]


def ext_characters_generating(E: BundleClass, kmax: int) -> List[GradedElement]:
    """ch(Lambda^k E) for k = 0..kmax from prod_i (1 + t e^(x_i))."""
    roots = ChernRoots(E)
    series = [roots.split.one()] + [roots.split.zero()] * kmax
    for i in range(E.rank):
        e = roots.roots[i].exp_truncated()
        new = list(series)
        for d in range(kmax):
            if not series[d].is_zero():
                new[d + 1] = new[d + 1] + series[d] * e
        series = new
    return [roots.symmetrize(c) for c in series]


# -- Todd classes --------------------------------------------------------

_bernoulli_cache: List[Fraction] = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (convention B_1 = -1/2), computed on demand
    from sum_(j=0..m) C(m+1, j) B_j = 0."""
    while len(_bernoulli_cache) <= m:
        k = len(_bernoulli_cache)
        acc = Fraction(0)
        for j in range(k):
            acc += comb(k + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (k + 1))
    return _bernoulli_cache[m]


def todd_series_coefficient(m: int) -> Fraction:
    """m-th coefficient of x / (1 - e^(-x)) = sum (-1)^m B_m x^m / m!."""
    sign = -1 if m % 2 == 1 else 1
    return sign * bernoulli(m) / factorial(m)


def todd_class(E: BundleClass) -> GradedElement:
    """td(E): the product of x_i / (1 - e^(-x_i)) over the Chern roots,
    rewritten in the Chern classes of E."""
    roots = ChernRoots(E)
    product = roots.split.one()
    for i in range(E.rank):
        series = roots.split.zero()
        power = roots.split.one()
        for m in range(E.ring.dim + 1):
            series = series + power * todd_series_coefficient(m)
            power = power * roots.roots[i]
        product = product * series
    return roots.symmetrize(product)
