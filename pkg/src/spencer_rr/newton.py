"""Newton identities between elementary symmetric functions and power sums.

Implemented once and used by every characteristic-class computation, so a
single table drives Chern characters, Adams operations and the conversion
of a Chern character back into Chern classes.

Both directions work over any commutative coefficient ring whose elements
support +, -, * and division by integers (graded ring elements here).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def power_sums_from_elementary(elementary: Sequence, upto: int, zero):
    """p_1..p_upto from e_1, e_2, ...; entries beyond the list are zero.

    Recursion: p_k = e_1 p_(k-1) - e_2 p_(k-2) + ... + (-1)^(k-1) k e_k.
    """
    def e(i):
        return elementary[i - 1] if 1 <= i <= len(elementary) else zero

    ps = []
    for k in range(1, upto + 1):
        acc = zero
        for i in range(1, k):
            term = e(i) * ps[k - i - 1]
            acc = acc - term if i % 2 == 0 else acc + term
        tail = e(k) * Fraction(k)
        ps.append(acc + tail if k % 2 == 1 else acc - tail)
    return ps


def elementary_from_power_sums(power_sums: Sequence, upto: int, one, zero):
    """e_1..e_upto from p_1, p_2, ...

    Recursion: k e_k = sum_(i=1..k) (-1)^(i-1) e_(k-i) p_i, with e_0 = 1.
    """
    def p(i):
        return power_sums[i - 1] if 1 <= i <= len(power_sums) else zero

    es = [one]
    for k in range(1, upto + 1):
        acc = zero
        for i in range(1, k + 1):
            term = es[k - i] * p(i)
            acc = acc - term if i % 2 == 0 else acc + term
        es.append(acc / k)
    return es[1:]
