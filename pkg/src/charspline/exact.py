"""Exact rational scalars and the combinatorial primitives built on them.

Everything downstream works over exact rationals; no floating point enters
any computation.  ``Rat`` is gmpy2's mpq when available (much faster on the
big products that show up in the determinantal formulas) and falls back to
the stdlib Fraction, which has an identical arithmetic surface.
"""

from __future__ import annotations

from math import isqrt

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is normally present
    from fractions import Fraction as Rat

__all__ = [
    "Rat",
    "rat",
    "parse_rat",
    "format_rat",
    "rat_to_decimal",
    "rat_sqrt",
    "poch",
    "falling",
    "factorial_rat",
]

ZERO = Rat(0)
ONE = Rat(1)


def rat(p, q=1):
    """Exact rational p/q, reduced, denominator positive."""
    return Rat(p, q)


def parse_rat(text: str):
    """Parse "p/q" or "p" into a Rat."""
    return Rat(text.strip())


def format_rat(x) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    x = Rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_to_decimal(x, digits: int = 15) -> str:
    """Decimal rendering at the given number of significant digits.

    Convenience output only; never used in computations.
    """
    from decimal import Decimal, localcontext

    x = Rat(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(int(x.numerator)) / Decimal(int(x.denominator))
    return str(d)


def rat_sqrt(x):
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Rat(x)
    if x < 0:
        return None
    n, d = int(x.numerator), int(x.denominator)
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Rat(sn, sd)
    return None


def poch(x, m: int):
    """Pochhammer symbol (x)_m = x(x+1)...(x+m-1); equals 1 for m = 0."""
    if m < 0:
        raise ValueError("poch requires m >= 0")
    out = ONE
    x = Rat(x)
    for i in range(m):
        out *= x + i
    return out


def falling(n, k: int):
    """Falling factorial n(n-1)...(n-k+1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("falling requires k >= 0")
    out = ONE
    n = Rat(n)
    for i in range(k):
        out *= n - i
    return out


def factorial_rat(n: int):
    """n! as a Rat; zero denominator-free and convenient in ratios."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return poch(1, n)
