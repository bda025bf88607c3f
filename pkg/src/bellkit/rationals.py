"""Exact scalar arithmetic: rationals, factorials, generalized binomials.

Every scalar in this package is an exact rational (``fractions.Fraction``)
or an arbitrary-precision ``int``.  There is no floating point anywhere, so
every identity check downstream is an exact equality with zero tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

Rational = Fraction


def rat(value) -> Fraction:
    """Parse a rational from "p/q" or "p" strings, ints, or Fractions.

    Tolerates a unicode minus sign in string input.
    """
    if isinstance(value, str):
        value = value.replace("−", "-").strip()
    if isinstance(value, float):
        raise ValueError(f"refusing float input {value!r}; pass a string or int")
    return Fraction(value)


def rat_str(value) -> str:
    """Serialize as "p/q", or just "p" when the denominator is 1."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def factorial(n: int) -> int:
    """n! for n >= 0."""
    return math.factorial(n)


def binomial_general(t, j: int):
    """Generalized binomial coefficient t(t-1)...(t-j+1) / j!.

    Defined for any rational (or integer) upper argument t and any
    nonnegative integer lower argument j; total on that domain.  Returns an
    int when t is an integer, a Fraction otherwise.
    """
    if j < 0:
        raise ValueError(f"lower index must be nonnegative, got {j}")
    if isinstance(t, Fraction) and t.denominator == 1:
        t = t.numerator
    return _binom(t, j)


@lru_cache(maxsize=None)
def _binom(t, j: int):
    if isinstance(t, int):
        if t >= 0:
            return math.comb(t, j)
        # falling factorial of a negative integer, flipped upward
        return (-1) ** j * math.comb(-t + j - 1, j)
    num = Fraction(1)
    for i in range(j):
        num *= t - i
    return num / math.factorial(j)


def multinomial(n: int, parts) -> int | Fraction:
    """n! divided by the product of the factorials of ``parts``.

    Returns an int when the quotient is integral, a Fraction otherwise.
    """
    parts = tuple(parts)
    if n < 0 or any(p < 0 for p in parts):
        raise ValueError("arguments must be nonnegative")
    denom = math.prod(math.factorial(p) for p in parts)
    q, r = divmod(math.factorial(n), denom)
    if r == 0:
        return q
    return Fraction(math.factorial(n), denom)
