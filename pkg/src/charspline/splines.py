"""Classical and discrete B-splines, and the spline shape of the K = 1 rows.

The discrete B-spline with integer knots y_1 > ... > y_N reproduces the
K = 1 rows of the type-A branching (restriction of normalized unitary-group
characters); the K = 1 rows computed by the engine for the three series are
their symplectic/orthogonal counterparts.  Everything here is exact.
"""

from __future__ import annotations

from .engine import k1_poly_value, lambda_k1_closed
from .exact import Rat, poch
from .oracle import check_signature

ZERO = Rat(0)
ONE = Rat(1)


def _check_knots(knots, integral=False):
    knots = tuple(int(y) if integral else Rat(y) for y in knots)
    if len(knots) < 2:
        raise ValueError("need at least two knots")
    if any(knots[i] <= knots[i + 1] for i in range(len(knots) - 1)):
        raise ValueError("knots must be strictly decreasing")
    return knots


def bspline(x, knots) -> Rat:
    """Classical B-spline M_N(x; y_1 > ... > y_N) at a rational point."""
    knots = _check_knots(knots)
    n = len(knots)
    x = Rat(x)
    total = ZERO
    for i, y in enumerate(knots):
        if y < x:
            continue
        den = ONE
        for r, yr in enumerate(knots):
            if r != i:
                den *= y - yr
        total += (y - x) ** (n - 2) / den
    return (n - 1) * total


def discrete_bspline(x: int, knots) -> Rat:
    """Discrete B-spline on the integers, with raising factorial powers in
    place of ordinary powers.

    The cutoff y_i >= x may be weakened to y_i + N - 2 >= x without
    changing the value, since (y - x + 1) raised to the factorial power
    N - 2 vanishes for x = y + 1, ..., y + N - 2.
    """
    knots = _check_knots(knots, integral=True)
    n = len(knots)
    total = ZERO
    for i, y in enumerate(knots):
        if y < x:
            continue
        den = ONE
        for r, yr in enumerate(knots):
            if r != i:
                den *= y - yr
        total += poch(y - x + 1, n - 2) / den
    return (n - 1) * total


def discrete_bspline_support(knots):
    """Closed lattice interval [y_N + N - 2, y_1] carrying the mass."""
    knots = _check_knots(knots, integral=True)
    return knots[-1] + len(knots) - 2, knots[0]


def lambda_typeA_k1(nu, N: int, k: int) -> Rat:
    """K = 1 type-A row weight: the discrete B-spline with knots
    y_i = nu_i - i + 1."""
    nu = check_signature(nu, N)
    if N < 2:
        raise ValueError("require N >= 2")
    return discrete_bspline(k, [nu[i] - i for i in range(N)])


def spline_shape_report(nu, N: int, series: str) -> dict:
    """Certify the discrete-spline shape of a K = 1 row.

    The row weights at k >= 1 are checked to agree, between consecutive
    breakpoints nu_i - i + 1, with a single polynomial of the expected
    degree (2N - 2 for series C and B, 2N - 3 for series D).  Degree is
    certified by vanishing of the (degree+1)-th finite difference of the
    piece polynomial.  Nonnegativity and normalization of the whole row
    are checked as well.
    """
    nu = check_signature(nu, N)
    degree = 2 * N - 2 if series in ("C", "B") else 2 * N - 3
    row = lambda_k1_closed(nu, N, series)
    total = sum(row.values(), ZERO)
    nonneg = all(w >= 0 for w in row.values())
    ms = [nu[i] - i for i in range(N)]
    breaks = sorted({m for m in ms if m >= 1}, reverse=True)
    pieces = []
    for idx, hi in enumerate(breaks):
        lo = breaks[idx + 1] + 1 if idx + 1 < len(breaks) else 1
        active = [i for i in range(N) if ms[i] >= hi]
        # the piece polynomial must reproduce the actual weights ...
        match = all(
            k1_poly_value(nu, N, series, k, active) == row.get((k,), ZERO)
            for k in range(lo, hi + 1)
        )
        # ... and its (degree+1)-th finite difference must vanish; the
        # polynomial extends beyond the lattice piece, so the difference
        # can be anchored anywhere
        vals = [k1_poly_value(nu, N, series, lo + j, active) for j in range(degree + 2)]
        for _ in range(degree + 1):
            vals = [vals[j + 1] - vals[j] for j in range(len(vals) - 1)]
        pieces.append({"lo": lo, "hi": hi, "ok": match and vals[0] == 0})
    return {
        "series": series,
        "degree": degree,
        "breakpoints": breaks,
        "pieces": pieces,
        "normalized": total == 1,
        "nonnegative": nonneg,
        "ok": total == 1 and nonneg and all(p["ok"] for p in pieces),
    }
