"""Classical and discrete B-splines, the type-A K = 1 rows, and the spline
shape certificates."""

import random
from itertools import product

import pytest

from charspline.exact import Rat
from charspline.splines import (
    bspline,
    discrete_bspline,
    discrete_bspline_support,
    lambda_typeA_k1,
    spline_shape_report,
)


def test_knot_validation():
    with pytest.raises(ValueError):
        bspline(0, (3,))
    with pytest.raises(ValueError):
        bspline(0, (1, 2))
    with pytest.raises(ValueError):
        discrete_bspline(0, (2, 2))


def test_two_knot_spline_is_the_uniform_indicator():
    # N = 2: M_2 is the normalized indicator of [y_2, y_1]
    assert bspline(Rat(1, 2), (2, -1)) == Rat(1, 3)
    assert bspline(3, (2, -1)) == 0
    # and its discrete cousin puts equal mass on the lattice points of
    # (y_2, y_1]; the left endpoint of the guaranteed support interval
    # carries zero mass in the two-knot case
    for k in range(0, 3):
        assert discrete_bspline(k, (2, -1)) == Rat(1, 3)
    assert discrete_bspline(-1, (2, -1)) == 0
    assert discrete_bspline(3, (2, -1)) == 0


def test_bspline_is_nonnegative_and_supported():
    knots = (5, 2, 0, -3)
    xs = [Rat(n, 4) for n in range(-16, 25)]
    for x in xs:
        v = bspline(x, knots)
        assert v >= 0
        if x > 5 or x < -3:
            assert v == 0


def test_bspline_riemann_sum_close_to_one():
    # the single approximate check in the repository: midpoint sums of the
    # continuous density converge to 1; with a fine rational step the gap
    # is well under 1/100 (everything stays exact, only the target is a
    # limit statement)
    knots = (3, 1, 0)
    q = 400
    total = sum(bspline(Rat(2 * j + 1, 2 * q), knots) for j in range(-q, 4 * q)) / q
    assert abs(total - 1) < Rat(1, 100)


def test_discrete_bspline_normalization_and_support():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randrange(2, 7)
        knots, y = [], rng.randrange(-5, 15)
        for _i in range(n):
            knots.append(y)
            y -= rng.randrange(1, 4)
        lo, hi = discrete_bspline_support(knots)
        assert lo == knots[-1] + n - 2 and hi == knots[0]
        values = [discrete_bspline(k, knots) for k in range(lo, hi + 1)]
        assert sum(values) == 1
        assert all(v >= 0 for v in values)
        for k in (lo - 1, lo - 2, hi + 1, hi + 5):
            assert discrete_bspline(k, knots) == 0


def test_discrete_cutoff_weakening_changes_nothing():
    # dropping a knot with y < x from the sum is safe because its raising
    # factorial power vanishes for x in (y, y + n - 2]; spot-check by
    # summing over all knots with the factor written out
    knots = (4, 2, -1, -2)
    n = len(knots)
    from charspline.exact import poch

    for x in range(-3, 6):
        full = Rat(0)
        for i, yv in enumerate(knots):
            if yv + n - 2 < x:
                continue
            den = Rat(1)
            for r, yr in enumerate(knots):
                if r != i:
                    den *= yv - yr
            full += poch(yv - x + 1, n - 2) / den
        assert (n - 1) * full == discrete_bspline(x, knots)


def _gt_patterns(top):
    """All Gelfand-Tsetlin patterns below a given top row."""
    if len(top) == 1:
        yield (top,)
        return
    ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
    for row in product(*ranges):
        if all(row[i] >= row[i + 1] for i in range(len(row) - 1)):
            for rest in _gt_patterns(tuple(row)):
                yield (top,) + rest


def test_typeA_k1_row_counts_gt_patterns():
    for N in (2, 3, 4):
        tops = [(2, 1, 0, 0)[:N], (3, 1, 1, 0)[:N], (4, 0, 0, 0)[:N]]
        for nu in tops:
            patterns = list(_gt_patterns(nu))
            counts = {}
            for p in patterns:
                k = p[-1][0]
                counts[k] = counts.get(k, 0) + 1
            for k in range(nu[-1] - 1, nu[0] + 2):
                want = Rat(counts.get(k, 0), len(patterns))
                assert lambda_typeA_k1(nu, N, k) == want


def test_typeA_rows_normalize():
    for N in (2, 3, 5):
        nu = tuple(range(N, 0, -1))
        lo = nu[-1] - N + 1 + N - 2
        hi = nu[0]
        assert sum(lambda_typeA_k1(nu, N, k) for k in range(lo, hi + 1)) == 1


def test_spline_shape_report_certifies_degree_and_pieces():
    rep = spline_shape_report((3, 1, 0), 3, "C")
    assert rep["ok"] and rep["normalized"] and rep["nonnegative"]
    assert rep["degree"] == 4
    assert rep["breakpoints"] == [3]
    assert all(p["ok"] for p in rep["pieces"])
    rep_d = spline_shape_report((3, 1, 0), 3, "D")
    assert rep_d["degree"] == 3 and rep_d["ok"]


def test_spline_shape_report_multiple_breakpoints():
    rep = spline_shape_report((4, 3, 0, 0), 4, "B")
    assert rep["breakpoints"] == [4, 2]
    assert rep["ok"]
