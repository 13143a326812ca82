"""Truncated graded ring Q[H]/(H^(n+1)) for the cohomology of P^n.

Elements carry one exact coefficient per degree 0..n.  Multiplication is
the convolution product with every term of degree > n dropped, matching
the vanishing H^(n+1) = 0.  Integration over P^n extracts the degree-n
coefficient (normalized so the integral of H^n is 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .scalars import ParamPoly, Scalar, format_scalar, is_zero, scalar_to_json


class RingMismatchError(ValueError):
    """Operands live over projective spaces of different dimensions."""


class ConstantTermError(ValueError):
    """Raised when a series operation needs a nilpotent argument."""


@dataclass(frozen=True)
class RingDescriptor:
    """The ring Q[H]/(H^(dim+1)); `dim` is the complex dimension of P^dim."""

    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 0:
            raise ValueError(f"ring dimension must be a non-negative integer, got {self.dim!r}")


def _coerce_scalar(c) -> Scalar:
    if isinstance(c, ParamPoly):
        return c
    return Fraction(c)


class GradedElement:
    """Element of Q[H]/(H^(n+1)): coefficient list indexed by H-degree."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingDescriptor, coeffs: Sequence):
        n = ring.dim
        cs = [_coerce_scalar(c) for c in coeffs[: n + 1]]
        cs.extend(Fraction(0) for _ in range(n + 1 - len(cs)))
        self.ring = ring
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "GradedElement":
        return cls(ring, ())

    @classmethod
    def one(cls, ring: RingDescriptor) -> "GradedElement":
        return cls(ring, (1,))

    @classmethod
    def scalar(cls, ring: RingDescriptor, c) -> "GradedElement":
        return cls(ring, (c,))

    # -- ring structure ----------------------------------------------------

    def _check_ring(self, other: "GradedElement"):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"ring dimensions differ: {self.ring.dim} vs {other.ring.dim}"
            )

    def __add__(self, other):
        if isinstance(other, GradedElement):
            self._check_ring(other)
            return GradedElement(
                self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)]
            )
        if isinstance(other, (int, Fraction, ParamPoly)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return GradedElement(self.ring, cs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (GradedElement, int, Fraction, ParamPoly)):
            return self + (-other if isinstance(other, GradedElement) else -1 * other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            self._check_ring(other)
            n = self.ring.dim
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if is_zero(a):
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not is_zero(b):
                        out[i + j] = out[i + j] + a * b
            return GradedElement(self.ring, out)
        if isinstance(other, (int, Fraction, ParamPoly)):
            return GradedElement(self.ring, [a * other for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return GradedElement(self.ring, [a / q for a in self.coeffs])
        return NotImplemented

    def __pow__(self, exp: int) -> "GradedElement":
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = GradedElement.one(self.ring)
        for _ in range(exp):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.ring == other.ring and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self == GradedElement.scalar(self.ring, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(is_zero(a) for a in self.coeffs)

    def coefficient(self, degree: int) -> Scalar:
        """Coefficient of H^degree (0 when degree exceeds the ring dimension)."""
        if 0 <= degree <= self.ring.dim:
            return self.coeffs[degree]
        return Fraction(0)

    def component(self, degree: int) -> "GradedElement":
        """The degree-`degree` part as a ring element."""
        cs = [Fraction(0)] * (self.ring.dim + 1)
        if 0 <= degree <= self.ring.dim:
            cs[degree] = self.coeffs[degree]
        return GradedElement(self.ring, cs)

    def project(self, ring: RingDescriptor) -> "GradedElement":
        """Truncate to a lower-dimensional projective space."""
        if ring.dim > self.ring.dim:
            raise RingMismatchError("cannot project to a larger ring")
        return GradedElement(ring, self.coeffs[: ring.dim + 1])

    def substitute(self, **params) -> "GradedElement":
        """Substitute concrete rationals for formal parameters."""
        cs = []
        for c in self.coeffs:
            if isinstance(c, ParamPoly) and c.name in params:
                cs.append(c.substitute(params[c.name]))
            else:
                cs.append(c)
        return GradedElement(self.ring, cs)

    def __str__(self):
        return format_graded(self)

    def __repr__(self):
        return f"GradedElement(P^{self.ring.dim}: {format_graded(self)})"


def hyperplane(ring: RingDescriptor, power: int = 1) -> GradedElement:
    """H^power as a ring element (zero when power exceeds the dimension)."""
    cs = [Fraction(0)] * (ring.dim + 1)
    if 0 <= power <= ring.dim:
        cs[power] = Fraction(1)
    return GradedElement(ring, cs)


def ring_mul(a: GradedElement, b: GradedElement) -> GradedElement:
    """Truncated product; operands must share the ring descriptor."""
    if not isinstance(a, GradedElement) or not isinstance(b, GradedElement):
        raise TypeError("ring_mul expects two graded elements")
    return a * b


def integrate(a: GradedElement) -> Scalar:
    """Integral over P^n: the coefficient of H^n."""
    return a.coeffs[a.ring.dim]


def exp_truncated(a: GradedElement) -> GradedElement:
    """exp of a nilpotent element: sum of a^k/k! for k = 0..n, exact."""
    if not is_zero(a.coeffs[0]):
        raise ConstantTermError(
            f"exp needs a nilpotent argument, constant term is {a.coeffs[0]}"
        )
    out = GradedElement.one(a.ring)
    power = GradedElement.one(a.ring)
    for k in range(1, a.ring.dim + 1):
        power = power * a
        out = out + power / factorial(k)
    return out


def format_graded(a: GradedElement) -> str:
    """Canonical text like "6 - 9H + (9/2 - 2a)H^2"."""
    parts = []
    for d, c in enumerate(a.coeffs):
        if is_zero(c):
            continue
        var = "" if d == 0 else ("H" if d == 1 else f"H^{d}")
        if isinstance(c, ParamPoly):
            negative = all(x <= 0 for x in c.coeffs)
            shown = -c if negative else c
            text = format_scalar(shown)
            single_term = sum(1 for x in shown.coeffs if x != 0) == 1
            body = (text if single_term else f"({text})") + var if var else text
            sign = " - " if negative else " + "
            parts.append((("-" if negative else "") + body) if not parts else sign + body)
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        elif mag == 1:
            body = var
        elif mag.denominator == 1:
            body = f"{mag}{var}"
        else:
            body = f"({mag}){var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


def graded_to_json(a: GradedElement):
    """Stable JSON form: list of per-degree scalar encodings."""
    return [scalar_to_json(c) for c in a.coeffs]
