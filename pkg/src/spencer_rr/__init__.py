"""Exact calculator for Spencer complexes on projective spaces.

Characteristic classes, Riemann-Roch Euler characteristics and the
symmetric-algebra extension operator of a Lie algebra, all in exact
rational arithmetic, with a diff table against the published PSU(2)
computation on the projective plane.
"""

from .graded import (
    ConstantTermError,
    GradedElement,
    RingDescriptor,
    RingMismatchError,
    exp_truncated,
    hyperplane,
    integrate,
    ring_mul,
)
from .scalars import ParamPoly, format_scalar, to_fraction
from .splitting import SplitElement, SplitRing, symmetrize_to_chern
from .bundles import (
    BundleClass,
    BundleError,
    ChernRoots,
    InternalCheckError,
    adams,
    chern_character,
    direct_sum,
    dual,
    ext_power,
    line_bundle,
    sym_power,
    tangent_projective,
    tensor,
    todd_class,
    trivial_bundle,
)

__all__ = [
    "BundleClass",
    "BundleError",
    "ChernRoots",
    "ConstantTermError",
    "GradedElement",
    "InternalCheckError",
    "ParamPoly",
    "RingDescriptor",
    "RingMismatchError",
    "SplitElement",
    "SplitRing",
    "adams",
    "chern_character",
    "direct_sum",
    "dual",
    "exp_truncated",
    "ext_power",
    "format_scalar",
    "hyperplane",
    "integrate",
    "line_bundle",
    "ring_mul",
    "sym_power",
    "symmetrize_to_chern",
    "tangent_projective",
    "tensor",
    "to_fraction",
    "todd_class",
    "trivial_bundle",
]

__version__ = "0.1.0"
