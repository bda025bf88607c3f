"""Weighted Bell sums and the inverse pair of sequence transforms.

The central object is the weighted sum

    q_function(n, b, lam, z) = sum_{k=1}^{n} C(lam + b*k, k-1) (k-1)! B(n, k)(z),

which packages the coefficient extraction for compositions of exponential
generating functions.  Specializing b = 0 gives the logarithmic polynomials
(lam = -1) and, after scaling by r, the potential polynomials (lam = r - 1).

``forward_transform`` maps x to y_n = q_function(n, b, a*n, x) and
``inverse_transform`` applies the companion formula with the reciprocal
binomial weights; composed in either order they give back the input,
exactly, whenever a*n + b stays away from 0.  ``lambda_identity_check``
certifies the composition identity that makes the inversion work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bell import bell_eval
from .identities import IdentityReport, PoleError, _report
from .rationals import binomial_general, rat
from .sequences import SequenceSpec


@dataclass(frozen=True)
class TransformParams:
    """Integer parameters (a, b) of the transform pair."""

    a: int
    b: int

    def require_invertible(self) -> None:
        if self.a == 0 and self.b == 0:
            raise ValueError("(a, b) = (0, 0) has no inverse transform")


def q_function(n: int, b: int, lam, z: SequenceSpec) -> Fraction:
    """The weighted Bell sum over k = 1..n; total in lam and b."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    z.require(n)
    lam = rat(lam)
    total = Fraction(0)
    for k in range(1, n + 1):
        total += (
            binomial_general(lam + b * k, k - 1)
            * factorial(k - 1)
            * bell_eval(n, k, z)
        )
    return total


def q_recurrence_check(n: int, lam: int, z: SequenceSpec) -> IdentityReport:
    """For integer lam >= 0, the b = 0 sum satisfies

        Q(n, lam) = z_n + sum_{i=1}^{lam} i/(lam+1)
                          sum_{m=1}^{n-1} C(n, m) z_{n-m} Q(m, i-1).
    """
    if lam < 0 or not isinstance(lam, int):
        raise ValueError(f"lam must be a nonnegative integer, got {lam!r}")
    z.require(n)
    lhs = q_function(n, 0, lam, z)
    rhs = z[n]
    for i in range(1, lam + 1):
        inner = Fraction(0)
        for m in range(1, n):
            inner += comb(n, m) * z[n - m] * q_function(m, 0, i - 1, z)
        rhs += Fraction(i, lam + 1) * inner
    return _report("q-recurrence", {"n": n, "lambda": lam, "z": z}, lhs, rhs)


def q_product_check(
    n1: int, n2: int, b1: int, b2: int, lam1, lam2, z: SequenceSpec
) -> IdentityReport:
    """Product of two weighted Bell sums re-expanded as a double sum.

    Terms are indexed by (k, l) with the two Bell factors nonzero, i.e.
    1 <= l <= n2 and 1 <= k - l <= n1; the two affine denominators must not
    vanish there.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError(f"orders must be positive, got n1={n1}, n2={n2}")
    z.require(max(n1, n2))
    lam1, lam2 = rat(lam1), rat(lam2)
    lhs = q_function(n1, b1, lam1, z) * q_function(n2, b2, lam2, z)
    rhs = Fraction(0)
    for l in range(1, n2 + 1):
        den2 = lam2 + b2 * l + 1
        if den2 == 0:
            raise PoleError(f"lam2 + {b2}*{l} + 1 = 0", where=("l", l))
        for j in range(1, n1 + 1):  # j = k - l
            k = j + l
            den1 = lam1 + b1 * j + 1
            if den1 == 0:
                raise PoleError(f"lam1 + {b1}*{j} + 1 = 0", where=("k-l", j))
            rhs += (
                factorial(k)
                * binomial_general(den1, j)
                * binomial_general(den2, l)
                / (den1 * den2 * comb(k, l))
                * bell_eval(n1, j, z)
                * bell_eval(n2, l, z)
            )
    return _report(
        "q-product",
        {
            "n1": n1,
            "n2": n2,
            "b1": b1,
            "b2": b2,
            "lambda1": lam1,
            "lambda2": lam2,
            "z": z,
        },
        lhs,
        rhs,
    )


def forward_transform(
    x: SequenceSpec, params: TransformParams, n_max: int
) -> SequenceSpec:
    """y_n = sum_{k=1}^{n} C(a*n + b*k, k-1) (k-1)! B(n, k)(x), n = 1..n_max."""
    x.require(n_max)
    return SequenceSpec(
        tuple(q_function(n, params.b, params.a * n, x) for n in range(1, n_max + 1))
    )


def inverse_value(y: SequenceSpec, params: TransformParams, n: int) -> Fraction:
    """Single entry of the inverse transform; needs a*n + b != 0."""
    params.require_invertible()
    y.require(n)
    a, b = params.a, params.b
    den = a * n + b
    if den == 0:
        raise PoleError(f"a*n + b = 0 at n = {n}", where=("n", n))
    total = Fraction(0)
    for k in range(1, n + 1):
        total += (
            Fraction(a * n + b * k, den)
            * binomial_general(-a * n - b, k - 1)
            * factorial(k - 1)
            * bell_eval(n, k, y)
        )
    return total


def inverse_transform(
    y: SequenceSpec, params: TransformParams, n_max: int
) -> SequenceSpec:
    """x_n = sum_k (a*n+b*k)/(a*n+b) C(-a*n-b, k-1) (k-1)! B(n, k)(y), n = 1..n_max.

    Raises :class:`PoleError` naming the first n <= n_max with a*n + b = 0;
    the prefactor is undefined there and no limit is taken.
    """
    params.require_invertible()
    y.require(n_max)
    return SequenceSpec(
        tuple(inverse_value(y, params, n) for n in range(1, n_max + 1))
    )


def lambda_identity_check(
    x: SequenceSpec, params: TransformParams, n: int, lam, k0: int = 1
) -> IdentityReport:
    """The composition identity between x and y = forward_transform(x):

        sum_{k=k0}^{n} C(lam, k-k0) (k-1)! B(n,k)(y)
            = sum_{k=k0}^{n} C(lam + a*n + b*k, k-k0) (k-1)! B(n,k)(x).

    Passing at n+1 distinct lam certifies it for all lam, both sides being
    polynomials in lam of degree below n.
    """
    if k0 < 1:
        raise ValueError(f"k0 must be >= 1, got {k0}")
    x.require(n)
    lam = rat(lam)
    y = forward_transform(x, params, n)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in range(k0, n + 1):
        lhs += binomial_general(lam, k - k0) * factorial(k - 1) * bell_eval(n, k, y)
        rhs += (
            binomial_general(lam + params.a * n + params.b * k, k - k0)
            * factorial(k - 1)
            * bell_eval(n, k, x)
        )
    return _report(
        "lambda-composition",
        {"a": params.a, "b": params.b, "n": n, "lambda": lam, "k0": k0, "x": x},
        lhs,
        rhs,
    )


def log_polynomials(z: SequenceSpec, n_max: int) -> SequenceSpec:
    """Logarithmic polynomials: the b = 0 weighted sum at lam = -1."""
    z.require(n_max)
    return SequenceSpec(
        tuple(q_function(n, 0, Fraction(-1), z) for n in range(1, n_max + 1))
    )


def potential_polynomials(r, z: SequenceSpec, n_max: int) -> SequenceSpec:
    """Potential polynomials: r times the b = 0 weighted sum at lam = r - 1."""
    z.require(n_max)
    r = rat(r)
    return SequenceSpec(
        tuple(r * q_function(n, 0, r - 1, z) for n in range(1, n_max + 1))
    )
