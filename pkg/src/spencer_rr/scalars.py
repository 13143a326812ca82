"""Exact scalar arithmetic: rationals plus one optional formal parameter.

Every coefficient in this package is either a `fractions.Fraction` or a
`ParamPoly`, a polynomial in a single named formal parameter with Fraction
coefficients.  The two mix freely in arithmetic; no floating point is ever
produced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction, "ParamPoly"]


def to_fraction(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a string like "-3/4".

    Floats are rejected: arithmetic here is exact and a float argument is
    almost always an upstream mistake.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r} (floats are rejected)")


def _result(name: str, coeffs) -> Scalar:
    """Normalize a coefficient list; constants demote to plain Fraction."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return Fraction(0)
    if len(cs) == 1:
        return cs[0]
    return ParamPoly(name, cs)


class ParamPoly:
    """Polynomial in one formal parameter, exact rational coefficients.

    Used for the symbolic bundle parameter (the second Chern coefficient
    `a`): the parameter always enters multiplied by H^2, so truncation in
    the cohomology ring keeps these polynomials tiny.
    """

    __slots__ = ("name", "coeffs")

    def __init__(self, name: str, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.name = name
        self.coeffs = tuple(cs)

    @classmethod
    def generator(cls, name: str = "a") -> "ParamPoly":
        return cls(name, (0, 1))

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            if other.name != self.name:
                raise ValueError(
                    f"mixed parameters {self.name!r} and {other.name!r}"
                )
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),)
        return None

    def __add__(self, other):
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        n = max(len(self.coeffs), len(cs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(cs):
            out[i] += c
        return _result(self.name, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.name, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        return self + _result(self.name, tuple(-c for c in cs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        out = [Fraction(0)] * (len(self.coeffs) + len(cs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(cs):
                out[i + j] += a * b
        return _result(self.name, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return _result(self.name, tuple(c / q for c in self.coeffs))
        return NotImplemented

    def __pow__(self, exp: int):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a non-negative integer")
        out: Scalar = Fraction(1)
        for _ in range(exp):
            out = self * out
        return out

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.name == other.name and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return len(self.coeffs) <= 1 and (
                (self.coeffs[0] if self.coeffs else Fraction(0)) == other
            )
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.name, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def substitute(self, value) -> Fraction:
        """Evaluate at a concrete rational value of the parameter."""
        v = to_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ParamPoly({format_scalar(self)!r})"


def is_zero(s: Scalar) -> bool:
    if isinstance(s, ParamPoly):
        return not bool(s)
    return s == 0


def format_scalar(s: Scalar) -> str:
    """Canonical text form: "3", "-9/2", "10 - 3a", "39/2 - (3/2)a"."""
    if not isinstance(s, ParamPoly):
        return str(Fraction(s))
    parts = []
    for power, c in enumerate(s.coeffs):
        if c == 0:
            continue
        var = "" if power == 0 else ("a" if s.name == "a" else s.name)
        if power >= 2:
            var += f"^{power}"
        mag = abs(c)
        if power == 0:
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


def scalar_to_json(s: Scalar):
    """JSON form: rationals as "p/q" strings, parameter polynomials as
    {"1": "p/q", "a": "p/q", ...} with stable keys."""
    if not isinstance(s, ParamPoly):
        return str(Fraction(s))
    out = {}
    for power, c in enumerate(s.coeffs):
        if c == 0:
            continue
        key = "1" if power == 0 else (s.name if power == 1 else f"{s.name}^{power}")
        out[key] = str(c)
    return out if out else "0"
