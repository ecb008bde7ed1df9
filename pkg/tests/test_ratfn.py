"""Factored even rational functions and the parameter bundle."""

import pytest

from charspline.errors import MultiplePoleError, NotRegularAtInfinity, PoleError
from charspline.exact import Rat
from charspline.ratfn import (
    SERIES_PARAMS,
    BasisCtx,
    EvenRatFn,
    ctx_for_series,
    poly_div_linear,
    poly_eval,
    poly_from_roots,
    recombined_sum,
)


def test_make_cancels_common_zero_pole_pairs():
    f = EvenRatFn.make(3, zeros=(1, 4, 4), poles=(4, 9))
    assert f.zeros == (Rat(1), Rat(4))
    assert f.poles == (Rat(9),)
    assert f(1) == 3 * (1 - 1) * (1 - 4) / (1 - 9)


def test_make_divides_rational_numerator_roots_out_of_poles():
    # num(u) = u - 4 cancels the pole at u = 4
    f = EvenRatFn.make(1, poles=(4,), num=(-4, 1))
    assert f.poles == ()
    assert f(2) == 1  # would be a pole without the cancellation


def test_eval_is_even_and_raises_at_poles():
    f = EvenRatFn.make(Rat(1, 2), zeros=(1,), poles=(9,))
    assert f(Rat(5, 2)) == f(Rat(-5, 2))
    with pytest.raises(PoleError):
        f(3)


def test_mul_accumulates_factors():
    f = EvenRatFn.make(2, zeros=(1,), poles=(4,))
    g = EvenRatFn.make(3, zeros=(4,), poles=(9,))
    h = f * g
    assert h.scale == 6
    assert h.poles == (Rat(9),)  # the (u-4) pair cancelled
    assert h(1) == f(1) * g(1)


def test_residue_simple_pole():
    # 2a/(t^2 - a^2) has residue 1 at t = a
    f = EvenRatFn.make(6, poles=(9,))
    assert f.residue_at(3) == 1
    assert f.residue_at(5) == 0
    with pytest.raises(ValueError):
        f.residue_at(-3)


def test_residue_refuses_multiple_poles():
    f = EvenRatFn(Rat(1), (), (Rat(4), Rat(4)), (Rat(1),))
    with pytest.raises(MultiplePoleError):
        f.residue_at(2)


def test_residue_linearity_through_recombined_sum():
    f = EvenRatFn.make(2, poles=(4,))
    g = EvenRatFn.make(5, zeros=(1,), poles=(4, 9))
    s = recombined_sum(f, g)
    for a in (2, 3):
        assert s.residue_at(a) == f.residue_at(a) + g.residue_at(a)


def test_at_infinity():
    assert EvenRatFn.make(7, zeros=(1,), poles=(2, 3)).at_infinity() == 0
    assert EvenRatFn.make(7, zeros=(1,), poles=(2,)).at_infinity() == 7
    with pytest.raises(NotRegularAtInfinity):
        EvenRatFn.make(1, zeros=(1, 2), poles=(3,)).at_infinity()
    assert EvenRatFn.make(0).at_infinity() == 0


def test_poly_helpers():
    p = poly_from_roots((1, 2))
    assert poly_eval(p, 5) == (5 - 1) * (5 - 2)
    assert poly_div_linear(p, 2) == (Rat(-1), Rat(1))


def test_basis_ctx_validation_and_grid():
    ctx = BasisCtx(Rat(0), Rat(1, 2), 3)
    assert ctx.b == 0
    assert ctx.grid_point(1) == Rat(7, 2)
    assert ctx.grid_index(Rat(11, 2)) == 3
    assert ctx.grid_index(Rat(10, 3)) is None
    assert ctx.grid_index(Rat(5, 2)) is None  # would need m = 0
    with pytest.raises(ValueError):
        BasisCtx(Rat(-2), Rat(1), 2)
    with pytest.raises(ValueError):
        BasisCtx(Rat(1, 2), Rat(-1), 2)
    with pytest.raises(ValueError):
        BasisCtx(Rat(1, 2), Rat(1), 0)


def test_series_tags():
    for tag, (a, eps) in SERIES_PARAMS.items():
        ctx = ctx_for_series(tag, 2)
        assert (ctx.a, ctx.eps) == (a, eps)
        assert ctx.series == tag
    assert BasisCtx(Rat(0), Rat(1, 2), 2).series is None
