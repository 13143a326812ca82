"""Finite-dimensional Hodge theory for chains of exact rational matrices.

Given differentials d_k and positive-definite Gram matrices on each space,
adjoints are G_k^(-1) d_k^T G_(k+1), the Laplacian at degree k is
d_k* d_k + d_(k-1) d_(k-1)*, and for an exact complex the kernel of the
Laplacian matches cohomology degree by degree — verified, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import linalg
from .lie import DualWeight, LieAlgebraData
from .operators import (
    UNSIGNED,
    OperatorMatrix,
    spencer_differential_point_model,
    sym_gram,
)


class NotAComplexError(ValueError):
    """d o d != 0; carries the first offending composite."""

    def __init__(self, degree: int, composite: OperatorMatrix):
        self.degree = degree
        self.composite = composite
        super().__init__(
            f"composite d_{degree + 1} o d_{degree} is nonzero "
            f"(max |entry| = {composite.max_abs_entry()})"
        )


def adjoint(op: OperatorMatrix, gram_domain: OperatorMatrix,
            gram_codomain: OperatorMatrix) -> OperatorMatrix:
    """Adjoint with respect to the given inner products:
    <A x, y> = <x, A* y> forces A* = G_dom^(-1) A^T G_cod."""
    g_dom = gram_domain.as_lists()
    g_cod = gram_codomain.as_lists()
    at = linalg.transpose(op.as_lists())
    entries = linalg.mat_mul(linalg.mat_mul(linalg.inverse(g_dom), at), g_cod)
    return OperatorMatrix(entries, op.codomain_degree, op.domain_degree,
                          op.codomain, op.domain)


def _zero_like(rows: int, cols: int, dom_deg: int, cod_deg: int) -> OperatorMatrix:
    return OperatorMatrix.zero(rows, cols, dom_deg, cod_deg)


def laplacian_chain(ops: Sequence[OperatorMatrix], grams: Sequence[OperatorMatrix],
                    k: int) -> OperatorMatrix:
    """Laplacian at degree k of the chain d_0, ..., d_(m-1) with Gram
    matrices G_0, ..., G_m.  Defined for arbitrary linear maps; no
    complex property is required here."""
    if len(grams) != len(ops) + 1:
        raise ValueError("need one Gram matrix per space (len(ops) + 1)")
    if not 0 <= k < len(grams):
        raise ValueError(f"degree {k} outside the chain")
    dim_k = len(grams[k].entries)
    up = _zero_like(dim_k, dim_k, k, k)
    down = _zero_like(dim_k, dim_k, k, k)
    if k < len(ops):
        d_k = ops[k]
        up = adjoint(d_k, grams[k], grams[k + 1]).compose(d_k)
    if k > 0:
        d_prev = ops[k - 1]
        down = d_prev.compose(adjoint(d_prev, grams[k - 1], grams[k]))
    return up + down


@dataclass(frozen=True)
class HodgeDegree:
    degree: int
    space_dim: int
    harmonic_dim: int
    cohomology_dim: int
    dims_match: bool
    orthogonal: bool


@dataclass(frozen=True)
class HodgeReport:
    degrees: Tuple[HodgeDegree, ...]

    @property
    def all_match(self) -> bool:
        return all(d.dims_match and d.orthogonal for d in self.degrees)


def hodge_verify(ops: Sequence[OperatorMatrix], grams: Sequence[OperatorMatrix]) -> HodgeReport:
    """Check the chain is a complex, then verify at every degree that the
    harmonic space has the cohomology dimension and that the three
    summands (harmonic, image, coimage) are pairwise orthogonal in the
    supplied inner products.  All checks are exact."""
    if len(grams) != len(ops) + 1:
        raise ValueError("need one Gram matrix per space (len(ops) + 1)")
    for k in range(len(ops) - 1):
        composite = ops[k + 1].compose(ops[k])
        if not composite.is_zero():
            raise NotAComplexError(k, composite)

    out = []
    for k in range(len(grams)):
        gram = grams[k].as_lists()
        dim_k = len(gram)
        lap = laplacian_chain(ops, grams, k)
        harmonic = linalg.nullspace(lap.as_lists())

        if k < len(ops):
            kernel_dim = len(linalg.nullspace(ops[k].as_lists()))
        else:
            kernel_dim = dim_k
        image_prev_rank = linalg.rank(ops[k - 1].as_lists()) if k > 0 else 0
        cohomology = kernel_dim - image_prev_rank

        image_basis = (
            linalg.column_space_basis(ops[k - 1].as_lists()) if k > 0 else []
        )
        if k < len(ops):
            coimage_op = adjoint(ops[k], grams[k], grams[k + 1])
            coimage_basis = linalg.column_space_basis(coimage_op.as_lists())
        else:
            coimage_basis = []

        orthogonal = True
        families = (harmonic, image_basis, coimage_basis)
        for a in range(3):
            for b in range(a + 1, 3):
                for u in families[a]:
                    for v in families[b]:
                        if linalg.dot(u, v, gram) != 0:
                            orthogonal = False
        total = len(harmonic) + len(image_basis) + len(coimage_basis)
        orthogonal = orthogonal and (total == dim_k)

        out.append(HodgeDegree(
            degree=k,
            space_dim=dim_k,
            harmonic_dim=len(harmonic),
            cohomology_dim=cohomology,
            dims_match=(len(harmonic) == cohomology),
            orthogonal=orthogonal,
        ))
    return HodgeReport(tuple(out))


@dataclass(frozen=True)
class PerturbationReport:
    degree: int
    convention: str
    direct: OperatorMatrix
    expanded: OperatorMatrix
    agree: bool
    max_abs: Fraction


def perturbation_check(L: LieAlgebraData, lam: DualWeight, k: int,
                       convention: str = UNSIGNED) -> PerturbationReport:
    """Mirror-Laplacian difference two ways.

    Directly: Delta_(-lam),k - Delta_(lam),k.  Expanded: the six bilinear
    terms produced by substituting D_(-lam) = D_lam + R into the Laplacian,

        R_k* D_k + D_k* R_k + R_k* R_k
        + R_(k-1) D_(k-1)* + D_(k-1) R_(k-1)* + R_(k-1) R_(k-1)*

    with adjoints taken in the symmetric-power inner products.  The two
    matrices must agree entry for entry; disagreement is raised, not
    returned.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    grams = [sym_gram(L, j) for j in range(k + 2)]

    def chain(weight: DualWeight) -> List[OperatorMatrix]:
        return [
            spencer_differential_point_model(L, weight, j, convention)
            for j in range(k + 1)
        ]

    ops_lam = chain(lam)
    ops_mirror = chain(-lam)
    lap_lam = laplacian_chain(ops_lam, grams, k)
    lap_mirror = laplacian_chain(ops_mirror, grams, k)
    direct = lap_mirror - lap_lam

    dim_k = len(grams[k].entries)
    expanded = _zero_like(dim_k, dim_k, k, k)
    d_k = ops_lam[k]
    r_k = ops_mirror[k] - ops_lam[k]
    d_k_star = adjoint(d_k, grams[k], grams[k + 1])
    r_k_star = adjoint(r_k, grams[k], grams[k + 1])
    expanded = expanded + r_k_star.compose(d_k) + d_k_star.compose(r_k) \
        + r_k_star.compose(r_k)
    if k > 0:
        d_p = ops_lam[k - 1]
        r_p = ops_mirror[k - 1] - ops_lam[k - 1]
        d_p_star = adjoint(d_p, grams[k - 1], grams[k])
        r_p_star = adjoint(r_p, grams[k - 1], grams[k])
        expanded = expanded + r_p.compose(d_p_star) + d_p.compose(r_p_star) \
            + r_p.compose(r_p_star)

    agree = direct == expanded
    if not agree:
        raise AssertionError(
            f"perturbation expansion disagrees with the direct difference at degree {k}"
        )
    return PerturbationReport(k, convention, direct, expanded, agree,
                              direct.max_abs_entry())


def spencer_point_chain(L: LieAlgebraData, lam: DualWeight, k_max: int,
                        convention: str = UNSIGNED):
    """Convenience: differentials Sym^0 -> ... -> Sym^(k_max+1) and their
    Gram matrices, for feeding hodge_verify."""
    ops = [spencer_differential_point_model(L, lam, k, convention)
           for k in range(k_max + 1)]
    grams = [sym_gram(L, k) for k in range(k_max + 2)]
    return ops, grams
