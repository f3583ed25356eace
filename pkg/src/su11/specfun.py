"""Scalar special functions used by the state constructors.

Everything here works on scalars, no arrays.  The terminating
hypergeometric sum is evaluated in exact rational arithmetic because its
alternating terms cancel catastrophically in floating point already for
modest orders; the Laguerre polynomial avoids the same cancellation by
using the upward recurrence instead of its alternating sum.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "ln_gamma",
    "gamma_ratio",
    "pochhammer",
    "binomial",
    "hyp2f1_terminating",
    "bessel_i",
    "laguerre",
]

# Below this order a running product is both faster and slightly more
# accurate than exponentiating a log-gamma difference.
_PRODUCT_CUTOFF = 64


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x(x+1)...(x+n-1), with the empty product equal to 1."""
    if n < 0:
        raise ValueError(f"pochhammer order must be >= 0, got {n}")
    acc = 1.0
    for i in range(n):
        acc *= x + i
    return acc


def gamma_ratio(n: int, twok: float) -> float:
    """Gamma(twok+n)/Gamma(twok) for twok > 0 and integer shift n >= 0.

    Running product up to the cutoff, log-gamma difference beyond it.
    """
    if twok <= 0.0:
        raise ValueError(f"gamma_ratio requires a positive base, got {twok}")
    if n < 0:
        raise ValueError(f"gamma_ratio shift must be >= 0, got {n}")
    if n <= _PRODUCT_CUTOFF:
        return pochhammer(twok, n)
    return math.exp(math.lgamma(twok + n) - math.lgamma(twok))


def binomial(a: int, b: int) -> int:
    """Exact binomial coefficient a over b for integers 0 <= b <= a."""
    if b < 0 or a < 0:
        raise ValueError(f"binomial arguments must be >= 0, got ({a}, {b})")
    if b > a:
        raise ValueError(f"binomial requires b <= a, got ({a}, {b})")
    return math.comb(a, b)


def hyp2f1_terminating(m: int, n: int, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(-m, -n; c; z) for integers m, n >= 0.

    The series terminates after min(m, n) + 1 terms but alternates in sign,
    so it is summed exactly over rationals (float inputs are taken at their
    exact binary value) and rounded once at the end.
    """
    if m < 0 or n < 0:
        raise ValueError(f"orders must be >= 0, got ({m}, {n})")
    if c <= 0.0:
        raise ValueError(f"lower parameter must be positive, got {c}")
    zf = Fraction(z)
    cf = Fraction(c)
    term = Fraction(1)
    total = Fraction(1)
    for q in range(min(m, n)):
        term *= Fraction((m - q) * (n - q), q + 1) * zf / (cf + q)
        total += term
    return float(total)


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind, order nu > -1, x >= 0."""
    if nu <= -1.0:
        raise ValueError(f"order must exceed -1, got {nu}")
    if x < 0.0:
        raise ValueError(f"argument must be >= 0, got {x}")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        if nu > 0.0:
            return 0.0
        raise ValueError("bessel_i diverges at x = 0 for negative order")
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    total = term
    comp = 0.0  # Kahan carry
    hh = half * half
    q = 0
    while True:
        term *= hh / ((q + 1) * (nu + q + 1))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        q += 1
        if term < 1e-17 * total or q > 10_000:
            break
    return total


def laguerre(order: int, x: complex) -> complex:
    """Laguerre polynomial L_order(x) for complex argument.

    Evaluated by the upward three-term recurrence in extended precision.
    The explicit alternating sum cancels catastrophically past order ~25
    for moderate real x; the recurrence tracks the dominant solution
    there and stays accurate.  Tests cross-check it against the exact
    rational value of the sum.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    xc = np.clongdouble(complex(x))
    if order == 0:
        return complex(np.clongdouble(1.0))
    prev = np.clongdouble(1.0)
    cur = np.clongdouble(1.0) - xc
    for j in range(1, order):
        prev, cur = cur, ((2 * j + 1 - xc) * cur - j * prev) / (j + 1)
    return complex(cur)
