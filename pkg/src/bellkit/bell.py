"""Partial Bell polynomials, computed two independent ways.

The polynomial B(n, k) in the variables x_1, ..., x_{n-k+1} is the sum,
over all index vectors i with entry sum k and weighted sum n, of

    n!/(i_1! i_2! ...) * (x_1/1!)^{i_1} * (x_2/2!)^{i_2} * ...

``bell_symbolic`` expands that definition into a polynomial and
``bell_eval`` evaluates the same sum at a concrete sequence, while
``bell_recursive`` computes the value by a one-step recurrence in k.  The
two evaluation routes share no code, which is what makes the cross-checks
in the test suite meaningful.  ``stirling2`` and ``stirling1_unsigned``
are the classical specializations at x_j = 1 and x_j = (j-1)!.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .partitions import enumerate_pi, strip_trailing_zeros
from .sequences import SequenceSpec, factorials, ones
from .sparsepoly import SparsePoly


def _term_coefficient(n: int, i) -> int:
    # n! / (prod i_j! * prod (j!)^{i_j}); always integral
    den = 1
    for j, ij in enumerate(i, start=1):
        if ij:
            den *= factorial(ij) * factorial(j) ** ij
    c, r = divmod(factorial(n), den)
    assert r == 0, f"non-integer coefficient at n={n}, i={i}"
    return c


def bell_symbolic(n: int, k: int) -> SparsePoly:
    """The polynomial B(n, k), with positive integer coefficients.

    Requires 1 <= k <= n; boundary cases live in ``bell_eval``.

    >>> bell_symbolic(4, 2)
    3*x2^2 + 4*x1*x3
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    terms = {}
    for i in enumerate_pi(n, k, n - k + 1):
        terms[strip_trailing_zeros(i)] = Fraction(_term_coefficient(n, i))
    return SparsePoly(terms)


def bell_eval(n: int, k: int, x: SequenceSpec) -> Fraction:
    """Value of B(n, k) at x, by the definition sum.

    Conventions: B(0, 0) = 1, B(n, 0) = 0 for n > 0, B(n, k) = 0 for k > n.
    Needs x_1 ... x_{n-k+1}.
    """
    if n < 0 or k < 0:
        raise ValueError(f"indices must be nonnegative, got n={n}, k={k}")
    if k == 0:
        return Fraction(1 if n == 0 else 0)
    if k > n:
        return Fraction(0)
    need = n - k + 1
    x.require(need)
    return _bell_def(n, k, x.values[:need])


@lru_cache(maxsize=None)
def _bell_def(n: int, k: int, xs: tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for i in enumerate_pi(n, k, n - k + 1):
        term = Fraction(_term_coefficient(n, i))
        for j, ij in enumerate(i):
            if ij:
                term *= xs[j] ** ij
        total += term
    return total


def bell_recursive(n: int, k: int, x: SequenceSpec) -> Fraction:
    """Value of B(n, k) at x via the recurrence

        B(n, k) = (1/k) * sum_{m=k-1}^{n-1} C(n, m) x_{n-m} B(m, k-1)

    with base B(m, 0) = [m == 0].  Must agree with ``bell_eval`` exactly.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    x.require(n - k + 1)
    memo: dict[tuple[int, int], Fraction] = {}

    def value(nn: int, kk: int) -> Fraction:
        if kk == 0:
            return Fraction(1 if nn == 0 else 0)
        key = (nn, kk)
        if key not in memo:
            acc = Fraction(0)
            for m in range(kk - 1, nn):
                acc += comb(nn, m) * x[nn - m] * value(m, kk - 1)
            memo[key] = acc / kk
        return memo[key]

    return value(n, k)


def stirling2(n: int, k: int) -> int:
    """Stirling set number S(n, k) = B(n, k) at all-ones."""
    val = bell_eval(n, k, ones(max(n - k + 1, 0)))
    assert val.denominator == 1
    return val.numerator


def stirling1_unsigned(n: int, k: int) -> int:
    """Unsigned Stirling cycle number c(n, k) = B(n, k) at x_j = (j-1)!."""
    val = bell_eval(n, k, factorials(max(n - k + 1, 0)))
    assert val.denominator == 1
    return val.numerator
