"""Characteristic-class calculus: published inputs, derived oracles, laws."""

import random
from fractions import Fraction

import pytest

from _helpers import rand_bundle
from spencer_rr import (
    BundleClass,
    BundleError,
    ChernRoots,
    GradedElement,
    RingDescriptor,
    adams,
    chern_character,
    direct_sum,
    dual,
    exp_truncated,
    ext_power,
    hyperplane,
    line_bundle,
    sym_power,
    tangent_projective,
    tensor,
    todd_class,
    trivial_bundle,
)
from spencer_rr.bundles import (
    bernoulli,
    ext_characters_generating,
    sym_characters_generating,
    todd_series_coefficient,
)
from spencer_rr.scalars import ParamPoly

P2 = RingDescriptor(2)
ONE = GradedElement.one(P2)
H = hyperplane(P2)
H2 = hyperplane(P2, 2)
A = ParamPoly.generator("a")


def psu2():
    return BundleClass(P2, 3, ONE + A * H2)


# -- chern_character -------------------------------------------------------

def test_ch_adjoint_bundle():
    assert chern_character(psu2()) == 3 * ONE - A * H2


def test_ch_line_bundle_is_exp():
    for d in (-3, -1, 0, 2, 5):
        assert chern_character(line_bundle(P2, d)) == exp_truncated(d * H)


def test_ch_cotangent_p2():
    omega1 = dual(tangent_projective(2))
    assert omega1.rank == 2
    assert omega1.chern == GradedElement(P2, (1, -3, 3))
    assert chern_character(omega1) == GradedElement(P2, (2, -3, Fraction(3, 2)))


# -- todd_class -------------------------------------------------------------

def test_todd_trivial():
    assert todd_class(trivial_bundle(P2, 3)) == ONE


def test_todd_line_bundle_series():
    # x/(1 - e^(-x)) = 1 + x/2 + x^2/12 on a surface
    L = line_bundle(P2, 1)
    assert todd_class(L) == ONE + H / 2 + H2 / 12


def test_todd_tangent_p2():
    # the published formula (c_1^2 + c_2)/12 evaluates to (9+3)/12 = 1
    oracle = ONE + Fraction(3, 2) * H + ((9 + 3) * H2) / 12
    assert oracle == GradedElement(P2, (1, Fraction(3, 2), 1))
    assert todd_class(tangent_projective(2)) == oracle


def test_bernoulli_values():
    assert [bernoulli(i) for i in range(7)] == [
        Fraction(1), Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)
    ]
    assert todd_series_coefficient(1) == Fraction(1, 2)
    assert todd_series_coefficient(2) == Fraction(1, 12)
    assert todd_series_coefficient(3) == 0


# -- dual --------------------------------------------------------------------

def test_dual_line():
    assert dual(line_bundle(P2, 5)) == line_bundle(P2, -5)


def test_dual_sign_rule():
    E = BundleClass(P2, 2, GradedElement(P2, (1, 2, Fraction(5, 3))))
    assert dual(E).chern == GradedElement(P2, (1, -2, Fraction(5, 3)))


def test_dual_tangent_matches_cotangent_character():
    assert chern_character(dual(tangent_projective(2))) == GradedElement(
        P2, (2, -3, Fraction(3, 2))
    )


# -- tensor -------------------------------------------------------------------

def test_tensor_cotangent_with_adjoint():
    product = tensor(dual(tangent_projective(2)), psu2())
    assert product.rank == 6
    assert chern_character(product) == GradedElement(
        P2, (6, -9, Fraction(9, 2) - 2 * A)
    )


def test_tensor_unit():
    E = BundleClass(P2, 2, GradedElement(P2, (1, 1, -2)))
    assert tensor(E, trivial_bundle(P2)) == E


def test_tensor_rank_multiplies():
    rng = random.Random(7)
    for _ in range(5):
        ring = RingDescriptor(rng.randint(1, 3))
        E, F = rand_bundle(rng, ring, 3), rand_bundle(rng, ring, 3)
        assert tensor(E, F).rank == E.rank * F.rank


# -- sym_power / ext_power -----------------------------------------------------

def test_sym0_is_trivial_line():
    assert sym_power(psu2(), 0) == trivial_bundle(P2)


def test_sym2_rank_six():
    assert sym_power(psu2(), 2).rank == 6


def test_sym2_character_adams_oracle():
    """Oracle: (ch(E)^2 + ch(psi^2 E))/2, written out independently."""
    G = psu2()
    ch = 3 * ONE - A * H2
    psi2 = 3 * ONE - 4 * A * H2  # p_2 = -2aH^2 scaled by 2^2
    oracle = (ch * ch + psi2) / 2
    assert oracle == 6 * ONE - 5 * A * H2
    assert chern_character(sym_power(G, 2)) == oracle


def test_ext1_is_identity():
    E = BundleClass(P2, 3, GradedElement(P2, (1, 2, -1)))
    assert ext_power(E, 1) == E


def test_ext2_tangent_is_anticanonical():
    # Lambda^2 T P^2 = O(3); oracle is the exponential of 3H
    det = ext_power(tangent_projective(2), 2)
    assert det.rank == 1
    assert chern_character(det) == exp_truncated(3 * H)


def test_ext_rank_binomial():
    E = BundleClass(P2, 3, ONE)
    assert ext_power(E, 2).rank == 3


def test_ext_power_beyond_rank_rejected():
    with pytest.raises(BundleError):
        ext_power(psu2(), 4)


def test_omega2_character():
    omega2 = ext_power(dual(tangent_projective(2)), 2)
    assert chern_character(omega2) == exp_truncated(-3 * H)
    assert chern_character(omega2) == GradedElement(P2, (1, -3, Fraction(9, 2)))


# -- adams ----------------------------------------------------------------------

def test_adams_one_is_character():
    G = psu2()
    assert adams(G, 1) == chern_character(G)


def test_adams_doubles_line_degree():
    for d in (-2, 1, 3):
        assert adams(line_bundle(P2, d), 2) == exp_truncated(2 * d * H)


def test_adams_on_adjoint():
    assert adams(psu2(), 2) == 3 * ONE - 4 * A * H2


# -- tangent_projective ------------------------------------------------------------

def test_tangent_p2_class():
    assert tangent_projective(2).chern == GradedElement(P2, (1, 3, 3))


def test_tangent_p1_class():
    p1 = RingDescriptor(1)
    T = tangent_projective(1)
    assert T.rank == 1
    assert T.chern == GradedElement(p1, (1, 2))


# -- constructor validation -----------------------------------------------------

def test_unit_constant_term_required():
    with pytest.raises(BundleError):
        BundleClass(P2, 2, GradedElement(P2, (2, 0, 0)))


def test_chern_beyond_rank_rejected():
    with pytest.raises(BundleError):
        BundleClass(P2, 1, GradedElement(P2, (1, 1, 1)))


def test_chern_roots_recover_classes():
    rng = random.Random(3)
    E = rand_bundle(rng, RingDescriptor(3), 3)
    roots = ChernRoots(E)
    for i in range(1, E.rank + 1):
        assert roots.symmetrize(roots.split.elementary(i)) == E.chern_class(i)


# -- randomized algebraic laws -----------------------------------------------------

def test_multiplicativity_randomized():
    rng = random.Random(11)
    for _ in range(12):
        ring = RingDescriptor(rng.randint(1, 4))
        E, F = rand_bundle(rng, ring, 3), rand_bundle(rng, ring, 3)
        assert chern_character(tensor(E, F)) == chern_character(E) * chern_character(F)


def test_whitney_randomized():
    rng = random.Random(12)
    for _ in range(12):
        ring = RingDescriptor(rng.randint(1, 4))
        E, F = rand_bundle(rng, ring), rand_bundle(rng, ring)
        S = direct_sum(E, F)
        assert S.chern == E.chern * F.chern
        assert chern_character(S) == chern_character(E) + chern_character(F)


def test_sym_ext_decomposition_randomized():
    rng = random.Random(13)
    for _ in range(10):
        ring = RingDescriptor(rng.randint(1, 4))
        E = rand_bundle(rng, ring)
        lhs = chern_character(sym_power(E, 2))
        if E.rank >= 2:
            lhs = lhs + chern_character(ext_power(E, 2))
        assert lhs == chern_character(E) * chern_character(E)


def test_adams_consistency_randomized():
    rng = random.Random(14)
    for _ in range(10):
        ring = RingDescriptor(rng.randint(1, 4))
        E = rand_bundle(rng, ring)
        ch, psi2 = chern_character(E), adams(E, 2)
        assert chern_character(sym_power(E, 2)) == (ch * ch + psi2) / 2
        if E.rank >= 2:
            assert chern_character(ext_power(E, 2)) == (ch * ch - psi2) / 2


def test_generating_functions_match_powers():
    rng = random.Random(15)
    for _ in range(4):
        ring = RingDescriptor(rng.randint(1, 3))
        E = rand_bundle(rng, ring, 3)
        kmax = E.rank + 2
        sym_gen = sym_characters_generating(E, kmax)
        ext_gen = ext_characters_generating(E, kmax)
        for k in range(kmax + 1):
            assert sym_gen[k] == chern_character(sym_power(E, k))
            if k <= E.rank:
                assert ext_gen[k] == chern_character(ext_power(E, k))
            else:
                assert ext_gen[k].is_zero()


def test_double_dual_and_todd_duality():
    rng = random.Random(16)
    for _ in range(8):
        ring = RingDescriptor(rng.randint(1, 4))
        E = rand_bundle(rng, ring)
        assert dual(dual(E)) == E
        product = todd_class(E) * todd_class(dual(E))
        for d in range(1, ring.dim + 1, 2):
            assert product.coefficient(d) == 0
