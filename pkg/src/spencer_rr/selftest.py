"""Built-in invariant suite behind the `selftest` CLI command.

Every named check exercises one of the algebraic contracts the package
relies on, with fixed seeds so two runs print byte-identical summaries.
The suite is the CI gate; the published-computation diff never is.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Callable, List, Tuple

from . import linalg
from .bundles import (
    BundleClass,
    adams,
    chern_character,
    direct_sum,
    dual,
    ext_characters_generating,
    ext_power,
    sym_characters_generating,
    sym_power,
    tensor,
    todd_class,
    trivial_bundle,
)
from .graded import GradedElement, RingDescriptor, exp_truncated
from .hodge import adjoint, hodge_verify, perturbation_check
from .inputspec import parse_input
from .lie import DualWeight, LieAlgebraData, su2, validate_lie, weight_function
from .operators import UNSIGNED, OperatorMatrix, delta_matrix, leibniz_obstruction, sym_gram
from .report import build_report, report_to_json
from .riemann_roch import SpencerComplexSpec, hrr_line_bundle, total_euler
from .splitting import SplitRing, symmetrize_to_chern
from .verify import diff_summary, paper_diff_table


class CheckFailure(AssertionError):
    pass


def _require(condition: bool, message: str):
    if not condition:
        raise CheckFailure(message)


def _random_fraction(rng: random.Random, span: int = 6, dens: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, dens))


def _random_element(rng: random.Random, ring: RingDescriptor) -> GradedElement:
    return GradedElement(ring, [_random_fraction(rng) for _ in range(ring.dim + 1)])


def _random_bundle(rng: random.Random, ring: RingDescriptor, max_rank: int = 4) -> BundleClass:
    rank = rng.randint(1, max_rank)
    coeffs = [Fraction(1)]
    for i in range(1, ring.dim + 1):
        coeffs.append(_random_fraction(rng) if i <= rank else Fraction(0))
    return BundleClass(ring, rank, GradedElement(ring, coeffs))


def _random_weight(rng: random.Random, L: LieAlgebraData) -> DualWeight:
    return DualWeight(L, tuple(_random_fraction(rng) for _ in range(L.dim)))


# -- graded core ---------------------------------------------------------

def check_graded_ring_axioms():
    rng = random.Random(101)
    for n in range(0, 7):
        ring = RingDescriptor(n)
        for _ in range(6):
            a, b, c = (_random_element(rng, ring) for _ in range(3))
            _require((a * b) * c == a * (b * c), f"associativity fails on P^{n}")
            _require(a * b == b * a, f"commutativity fails on P^{n}")
            _require(a * (b + c) == a * b + a * c, f"distributivity fails on P^{n}")


def check_graded_truncation_projection():
    rng = random.Random(102)
    for m, n in ((4, 2), (5, 3), (3, 1), (6, 0)):
        big, small = RingDescriptor(m), RingDescriptor(n)
        for _ in range(5):
            a, b = _random_element(rng, big), _random_element(rng, big)
            _require(
                (a * b).project(small) == a.project(small) * b.project(small),
                f"projection P^{m} -> P^{n} is not a ring map",
            )


def check_graded_exp_inverse():
    rng = random.Random(103)
    for n in (1, 2, 3, 4):
        ring = RingDescriptor(n)
        for _ in range(5):
            a = _random_element(rng, ring)
            a = a - a.component(0)
            product = exp_truncated(a) * exp_truncated(-1 * a)
            _require(product == GradedElement.one(ring), f"exp(a)exp(-a) != 1 on P^{n}")


def check_symmetric_reduction_roundtrip():
    rng = random.Random(104)
    ring = RingDescriptor(3)
    bundle = _random_bundle(rng, ring, max_rank=3)
    rank = bundle.rank
    split = SplitRing(ring, rank)
    cs = [bundle.chern_class(i) for i in range(1, rank + 1)]
    for _ in range(5):
        exponents = [rng.randint(0, 2) for _ in range(rank)]
        symbolic = split.one()
        direct = GradedElement.one(ring)
        for i, e in enumerate(exponents, start=1):
            for _ in range(e):
                symbolic = symbolic * split.elementary(i)
                direct = direct * cs[i - 1]
        _require(
            symmetrize_to_chern(symbolic, cs) == direct,
            "symmetrize(expanded elementary product) != Chern polynomial",
        )


# -- characteristic classes ----------------------------------------------

def check_chern_tensor_multiplicativity():
    rng = random.Random(105)
    for _ in range(8):
        ring = RingDescriptor(rng.randint(1, 3))
        E = _random_bundle(rng, ring, 3)
        F = _random_bundle(rng, ring, 3)
        _require(
            chern_character(tensor(E, F)) == chern_character(E) * chern_character(F),
            "ch(E x F) != ch(E) ch(F)",
        )


def check_chern_whitney_sum():
    rng = random.Random(106)
    for _ in range(10):
        ring = RingDescriptor(rng.randint(1, 4))
        E = _random_bundle(rng, ring)
        F = _random_bundle(rng, ring)
        S = direct_sum(E, F)
        _require(S.chern == E.chern * F.chern, "c(E + F) != c(E) c(F)")
        _require(
            chern_character(S) == chern_character(E) + chern_character(F),
            "ch(E + F) != ch(E) + ch(F)",
        )


def check_chern_sym_ext_decomposition():
    rng = random.Random(107)
    for _ in range(8):
        ring = RingDescriptor(rng.randint(1, 3))
        E = _random_bundle(rng, ring, 3)
        lhs = chern_character(sym_power(E, 2))
        if E.rank >= 2:
            lhs = lhs + chern_character(ext_power(E, 2))
        rhs = chern_character(E) * chern_character(E)
        _require(lhs == rhs, "ch(Sym^2) + ch(Lambda^2) != ch(E x E)")


def check_chern_generating_functions():
    rng = random.Random(108)
    for _ in range(4):
        ring = RingDescriptor(rng.randint(1, 3))
        E = _random_bundle(rng, ring, 3)
        kmax = E.rank + 2
        sym_gen = sym_characters_generating(E, kmax)
        ext_gen = ext_characters_generating(E, kmax)
        for k in range(kmax + 1):
            _require(
                sym_gen[k] == chern_character(sym_power(E, k)),
                f"Sym^{k} generating function disagrees",
            )
            expected_ext = (
                chern_character(ext_power(E, k))
                if k <= E.rank
                else GradedElement.zero(ring)
            )
            _require(ext_gen[k] == expected_ext, f"Lambda^{k} generating function disagrees")


def check_chern_adams_consistency():
    rng = random.Random(109)
    for _ in range(8):
        ring = RingDescriptor(rng.randint(1, 4))
        E = _random_bundle(rng, ring)
        ch = chern_character(E)
        psi2 = adams(E, 2)
        _require(
            chern_character(sym_power(E, 2)) == (ch * ch + psi2) / 2,
            "ch(Sym^2 E) != (ch^2 + psi^2)/2",
        )
        if E.rank >= 2:
            _require(
                chern_character(ext_power(E, 2)) == (ch * ch - psi2) / 2,
                "ch(Lambda^2 E) != (ch^2 - psi^2)/2",
            )


def check_chern_duality():
    rng = random.Random(110)
    for _ in range(8):
        ring = RingDescriptor(rng.randint(1, 4))
        E = _random_bundle(rng, ring)
        _require(dual(dual(E)) == E, "dual(dual(E)) != E")
        product = todd_class(E) * todd_class(dual(E))
        for d in range(1, ring.dim + 1, 2):
            _require(
                product.coefficient(d) == 0,
                "td(E) td(E*) has an odd-degree term",
            )


# -- Lie layer -------------------------------------------------------------

def _scaled_su2(q: Fraction) -> LieAlgebraData:
    base = su2()
    table = [
        [[q * base.f[c][a][b] for b in range(3)] for a in range(3)]
        for c in range(3)
    ]
    return LieAlgebraData.from_table(table, compact=True, trivial_center=True)


def check_lie_mirror_antisymmetry():
    rng = random.Random(111)
    for L in (su2(), _scaled_su2(Fraction(2)), _scaled_su2(Fraction(1, 3))):
        validate_lie(L)
        for _ in range(5):
            lam = _random_weight(rng, L)
            for k in range(0, 3):
                _require(
                    delta_matrix(L, -lam, k) == -delta_matrix(L, lam, k),
                    "delta(-lam) != -delta(lam)",
                )


def check_lie_operator_difference():
    from .operators import operator_difference

    rng = random.Random(112)
    L = su2()
    for _ in range(4):
        lam = _random_weight(rng, L)
        for k in range(0, 5):
            diff = operator_difference(L, lam, k)
            expected = delta_matrix(L, lam, k).scale(-2 if k % 2 == 0 else 2)
            _require(diff == expected, "operator difference != -2(-1)^k delta")


def check_lie_leibniz_unsigned_zero():
    rng = random.Random(113)
    L = su2()
    for _ in range(3):
        lam = _random_weight(rng, L)
        for k in (2, 3, 4):
            _require(
                leibniz_obstruction(L, lam, k, UNSIGNED) == 0,
                "unsigned derivation shows an order obstruction",
            )


def check_lie_weight_function():
    rng = random.Random(114)
    L = su2()
    _require(weight_function(DualWeight(L, (0, 0, 0))) == 1, "w(0) != 1")
    for _ in range(10):
        lam = _random_weight(rng, L)
        w = weight_function(lam)
        _require(w == weight_function(-lam), "w(-lam) != w(lam)")
        _require(w >= 1, "weight below 1 on a compact form")


def check_lie_adjoint_contract():
    rng = random.Random(115)
    L = su2()
    lam = DualWeight(L, (1, Fraction(1, 2), -2))
    for k in (0, 1, 2):
        op = delta_matrix(L, lam, k)
        g_dom, g_cod = sym_gram(L, k), sym_gram(L, k + 1)
        star = adjoint(op, g_dom, g_cod)
        for _ in range(4):
            x = [_random_fraction(rng) for _ in range(op.shape[1])]
            y = [_random_fraction(rng) for _ in range(op.shape[0])]
            lhs = linalg.dot(linalg.mat_vec(op.as_lists(), x), y, g_cod.as_lists())
            rhs = linalg.dot(x, linalg.mat_vec(star.as_lists(), y), g_dom.as_lists())
            _require(lhs == rhs, "<Ax, y> != <x, A* y>")


def random_exact_complex(rng: random.Random, spaces: int = 4, max_dim: int = 4):
    """Random chain with d^2 = 0 forced exactly: each new map is a random
    matrix composed with the Gram-orthogonal projector away from the image
    of the previous one."""
    dims = [rng.randint(1, max_dim) for _ in range(spaces)]
    grams = []
    for k, n in enumerate(dims):
        a = [[_random_fraction(rng, 2, 2) for _ in range(n)] for _ in range(n)]
        g = linalg.mat_add(linalg.mat_mul(linalg.transpose(a), a), linalg.identity(n))
        grams.append(OperatorMatrix(g, k, k))
    ops = []
    prev = None
    for k in range(spaces - 1):
        rows, cols = dims[k + 1], dims[k]
        raw = [[_random_fraction(rng, 2, 1) for _ in range(cols)] for _ in range(rows)]
        if prev is not None:
            basis = linalg.column_space_basis(prev)
            if basis:
                g = grams[k].as_lists()
                s = linalg.transpose(basis)  # columns span the image
                st_g = linalg.mat_mul(linalg.transpose(s), g)
                middle = linalg.inverse(linalg.mat_mul(st_g, s))
                projector = linalg.mat_mul(s, linalg.mat_mul(middle, st_g))
                complement = linalg.mat_sub(linalg.identity(cols), projector)
                raw = linalg.mat_mul(raw, complement)
        ops.append(OperatorMatrix(raw, k, k + 1))
        prev = raw
    return ops, grams


def check_hodge_exact_complexes():
    rng = random.Random(116)
    for _ in range(6):
        ops, grams = random_exact_complex(rng)
        report = hodge_verify(ops, grams)
        _require(report.all_match, "harmonic dimensions or orthogonality failed")


def check_lie_perturbation_agreement():
    rng = random.Random(117)
    L = su2()
    for _ in range(3):
        lam = _random_weight(rng, L)
        for k in (0, 1, 2, 3):
            rep = perturbation_check(L, lam, k)
            _require(rep.agree, "perturbation expansion disagrees")


# -- Riemann-Roch ----------------------------------------------------------

def check_hrr_anchor():
    from math import factorial

    for n in (1, 2, 3, 4):
        for d in range(-6, 7):
            value = hrr_line_bundle(n, d)
            closed = Fraction(1)
            for i in range(1, n + 1):
                closed *= d + i
            closed /= factorial(n)
            _require(value == closed, f"HRR anchor fails at n={n}, d={d}")


def check_hrr_serre_duality():
    for n in (1, 2, 3, 4):
        for d in range(-6, 7):
            lhs = hrr_line_bundle(n, d)
            rhs = hrr_line_bundle(n, -d - n - 1)
            _require(lhs == (-1) ** n * rhs, f"Serre symmetry fails at n={n}, d={d}")


def check_euler_two_path():
    rng = random.Random(118)
    for _ in range(6):
        ring = RingDescriptor(rng.randint(1, 3))
        spec = SpencerComplexSpec(ring.dim, _random_bundle(rng, ring, 3))
        total_euler(spec)  # raises if the two paths disagree


def check_euler_direct_sum():
    rng = random.Random(119)
    for _ in range(4):
        ring = RingDescriptor(rng.randint(1, 3))
        G = _random_bundle(rng, ring, 3)
        extended = direct_sum(G, trivial_bundle(ring, 1))
        for k in range(0, 4):
            lhs = chern_character(sym_power(extended, k))
            rhs = GradedElement.zero(ring)
            for j in range(k + 1):
                rhs = rhs + chern_character(sym_power(G, j))
            _require(lhs == rhs, "Sym^k(G + O) != sum of Sym^j(G)")


def check_euler_mirror_invariance():
    from .riemann_roch import mirror_compare

    rng = random.Random(120)
    L = su2()
    for _ in range(6):
        ring = RingDescriptor(rng.randint(1, 3))
        spec = SpencerComplexSpec(
            ring.dim, _random_bundle(rng, ring, 3), _random_weight(rng, L)
        )
        _require(mirror_compare(spec).mirror_equal, "mirror comparison failed")


# -- reports ---------------------------------------------------------------

_PSU2_DOC = {
    "base": {"projective": 2},
    "bundle": {"builtin": "psu2", "a": "symbolic"},
    "lie": {"builtin": "su2"},
    "lambda": ["1", "0", "0"],
    "checks": ["mirror"],
}


def check_report_determinism():
    first = report_to_json(build_report(parse_input(_PSU2_DOC)))
    second = report_to_json(build_report(parse_input(_PSU2_DOC)))
    _require(first == second, "identical inputs produced different reports")


def check_report_round_trip():
    report = build_report(parse_input(_PSU2_DOC))
    _require(
        json.loads(report_to_json(report)) == report,
        "report does not survive a JSON round trip",
    )


_EXPECTED_DIFF = (
    ("integral_normalization", True),
    ("ch_adjoint_bundle", True),
    ("ch_one_forms", True),
    ("todd_h2_coefficient", False),
    ("rank_sym2", True),
    ("ch_sym2_adjoint", False),
    ("degree1_term_product", True),
    ("ch_two_forms", False),
    ("euler_degree_0", False),
    ("euler_degree_1", False),
    ("euler_degree_2", False),
    ("euler_degree_2_total_line", False),
    ("euler_total", False),
)


def check_paper_diff_rows():
    rows = paper_diff_table()
    got = tuple((r.key, r.match) for r in rows)
    _require(got == _EXPECTED_DIFF, f"diff table rows changed: {got}")
    summary = diff_summary(rows)
    _require(summary == {"rows": 13, "matches": 5, "mismatches": 8},
             f"diff summary changed: {summary}")


CHECKS: List[Tuple[str, Callable[[], None]]] = [
    ("graded-ring-axioms", check_graded_ring_axioms),
    ("graded-truncation-projection", check_graded_truncation_projection),
    ("graded-exp-inverse", check_graded_exp_inverse),
    ("symmetric-reduction-roundtrip", check_symmetric_reduction_roundtrip),
    ("chern-tensor-multiplicativity", check_chern_tensor_multiplicativity),
    ("chern-whitney-sum", check_chern_whitney_sum),
    ("chern-sym-ext-decomposition", check_chern_sym_ext_decomposition),
    ("chern-generating-functions", check_chern_generating_functions),
    ("chern-adams-consistency", check_chern_adams_consistency),
    ("chern-duality", check_chern_duality),
    ("lie-mirror-antisymmetry", check_lie_mirror_antisymmetry),
    ("lie-operator-difference", check_lie_operator_difference),
    ("lie-leibniz-unsigned-zero", check_lie_leibniz_unsigned_zero),
    ("lie-weight-function", check_lie_weight_function),
    ("lie-adjoint-contract", check_lie_adjoint_contract),
    ("hodge-exact-complexes", check_hodge_exact_complexes),
    ("lie-perturbation-agreement", check_lie_perturbation_agreement),
    ("hrr-anchor", check_hrr_anchor),
    ("hrr-serre-duality", check_hrr_serre_duality),
    ("euler-two-path", check_euler_two_path),
    ("euler-direct-sum", check_euler_direct_sum),
    ("euler-mirror-invariance", check_euler_mirror_invariance),
    ("report-determinism", check_report_determinism),
    ("report-round-trip", check_report_round_trip),
    ("paper-diff-rows", check_paper_diff_rows),
]


def run_selftest(write=print) -> int:
    """Run every invariant; print one line per check and a summary.

    Returns 0 when everything passes, 1 otherwise.
    """
    failures = 0
    for name, check in CHECKS:
        try:
            check()
        except Exception as exc:  # report and continue; the summary decides
            failures += 1
            write(f"FAIL  {name}: {exc}")
        else:
            write(f"PASS  {name}")
    total = len(CHECKS)
    write(f"selftest: {total - failures} passed, {failures} failed, {total} total")
    return 0 if failures == 0 else 1
