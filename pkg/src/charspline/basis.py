"""Basis functions of the even-rational-function space and the expansion
machinery built on them.

Three bases are in play: the elementary pole basis e_m, the factorial basis
f_l, and the terminating-hypergeometric basis g_k.  All transition
coefficients are exact rationals; the terminating 4F3 sums are evaluated by
direct finite summation (termination is guaranteed by a nonpositive-integer
upper parameter), and every gamma-function ratio appearing in the closed
forms is a finite Pochhammer product.
"""

from __future__ import annotations

from .errors import NotInSpace, PoleError
from .exact import Rat, factorial_rat, poch, rat_sqrt
from .ratfn import BasisCtx, EvenRatFn, ctx_for_series, poly_add, poly_from_roots, poly_scale

ZERO = Rat(0)
ONE = Rat(1)


def hyp4f3(uppers, lowers):
    """Terminating balanced 4F3 at unit argument, summed term by term.

    At least one upper parameter must be a nonpositive integer; the sum
    runs up to the first index where that factor kills the series.  Lower
    parameters must not hit a nonpositive integer before termination.
    """
    uppers = [Rat(u) for u in uppers]
    lowers = [Rat(v) for v in lowers]
    stops = [int(-u) for u in uppers if u.denominator == 1 and u <= 0]
    if not stops:
        raise ValueError("series does not terminate")
    nmax = min(stops)
    total = ZERO
    term = ONE
    for n in range(nmax + 1):
        total += term
        if n == nmax:
            break
        for u in uppers:
            term *= u + n
        for v in lowers:
            if v + n == 0:
                raise PoleError("lower parameter hits a nonpositive integer")
            term /= v + n
        term /= n + 1
    return total


def f_fn(ell: int, ctx: BasisCtx) -> EvenRatFn:
    """f_l(t) = (-1)^l / prod_{j=1..l} (t^2 - A_j^2); f_0 = 1."""
    poles = [ctx.grid_point(j) ** 2 for j in range(1, ell + 1)]
    return EvenRatFn.make(Rat(-1) ** ell, (), poles)


def e_fn(m: int, ctx: BasisCtx) -> EvenRatFn:
    """e_m(t) = 1/(t - A_m) - 1/(t + A_m) = 2 A_m / (t^2 - A_m^2)."""
    if m < 1:
        raise ValueError("e_fn requires m >= 1")
    am = ctx.grid_point(m)
    return EvenRatFn.make(2 * am, (), (am * am,))


def g_series_coeffs(k: int, ctx: BasisCtx):
    """Coefficients c_l with g_k = sum_l c_l * (L)_l (L+a)_l * f_l."""
    a, eps, L = ctx.a, ctx.eps, ctx.L
    out = []
    for ell in range(k + 1):
        c = poch(-k, ell) * poch(k + 2 * eps, ell) / (poch(a + 1, ell) * factorial_rat(ell))
        out.append(c * poch(L, ell) * poch(L + a, ell))
    return out


def g_general(k: int, ctx: BasisCtx) -> EvenRatFn:
    """The k-th basis function, assembled over its common pole denominator.

    Poles are a subset of {A_1, ..., A_k}; whatever cancels rationally
    (notably the whole tail for L = 1) is cancelled during construction.
    """
    coeffs = g_series_coeffs(k, ctx)
    grid_sq = [ctx.grid_point(j) ** 2 for j in range(1, k + 1)]
    num = (ZERO,)
    for ell, c in enumerate(coeffs):
        part = poly_from_roots(grid_sq[ell:])
        num = poly_add(num, poly_scale(part, c * Rat(-1) ** ell))
    return EvenRatFn.make(1, (), grid_sq, num)


def g_value(k: int, ctx: BasisCtx, t) -> Rat:
    """g_k evaluated at t straight from its defining terminating series."""
    a, eps, L = ctx.a, ctx.eps, ctx.L
    t = Rat(t)
    return hyp4f3(
        (-k, k + 2 * eps, L, L + a),
        (-t + L + eps, t + L + eps, a + 1),
    )


def g_closed(series: str, k: int, L: int, t) -> Rat:
    """Elementary closed form of g_k for the three distinguished series.

    For series C the display divides by 2t; the removable singularity at
    t = 0 is evaluated through the general (series) path instead.
    """
    t = Rat(t)
    if series == "C":
        if t == 0:
            return g_value(k, ctx_for_series("C", L), t)
        den1 = poch(t + L + 1, k)
        den2 = poch(-t + L + 1, k)
        if den1 == 0 or den2 == 0:
            raise PoleError("g_closed(C) evaluated at a pole")
        bracket = poch(t - L, k + 2) / den1 - poch(-t - L, k + 2) / den2
        return bracket / (2 * (k + 1) * (1 - 2 * L) * t)
    if series == "B":
        den1 = poch(t + L + Rat(1, 2), k)
        den2 = poch(-t + L + Rat(1, 2), k)
        if den1 == 0 or den2 == 0:
            raise PoleError("g_closed(B) evaluated at a pole")
        bracket = (
            poch(t - L + Rat(1, 2), k + 1) / den1
            + poch(-t - L + Rat(1, 2), k + 1) / den2
        )
        return bracket / (2 * (Rat(k) + Rat(1, 2)) * (1 - 2 * L))
    if series == "D":
        den1 = poch(t + L, k)
        den2 = poch(-t + L, k)
        if den1 == 0 or den2 == 0:
            raise PoleError("g_closed(D) evaluated at a pole")
        return (poch(t - L + 1, k) / den1 + poch(-t - L + 1, k) / den2) / 2
    raise ValueError(f"unknown series tag {series!r}")


def coeff_e_in_f(m: int, ell: int, ctx: BasisCtx) -> Rat:
    """Transition coefficient (e_m : f_l); zero for l = 0 and for l > m."""
    if m < 1:
        raise ValueError("coeff_e_in_f requires m >= 1")
    if ell == 0:
        return ZERO
    eps, L = ctx.eps, ctx.L
    out = 2 * Rat(-1) ** ell * ctx.grid_point(m)
    for j in range(1, ell):
        out *= (2 * L + 2 * eps + m + j - 2) * (m - j)
    return out


def coeff_f_in_g(ell: int, k: int, ctx: BasisCtx) -> Rat:
    """Transition coefficient (f_l : g_k); zero for k > l."""
    a, eps, L = ctx.a, ctx.eps, ctx.L
    if k > ell:
        return ZERO
    # 2(k+eps) * Gamma(k+2eps)/Gamma(k+2eps+l+1), with the k+2eps = 0
    # degenerate point (k = 0 in the D series) taken as its limit value
    k2e = Rat(k) + 2 * eps
    lead = ONE if k2e == 0 else 2 * (Rat(k) + eps) / k2e
    lead /= poch(k2e + 1, ell)
    return (
        lead
        * poch(a + 1, ell)
        * poch(Rat(-ell), k)
        / (poch(L, ell) * poch(L + a, ell) * factorial_rat(k))
    )


def E_general(m: int, k: int, ctx: BasisCtx) -> Rat:
    """Transition coefficient (e_m : g_k) via the terminating 4F3 form."""
    if m < 1:
        raise ValueError("E_general requires m >= 1")
    a, eps, L = ctx.a, ctx.eps, ctx.L
    if k > m:
        return ZERO
    if k == 0:
        pref = -2 * ctx.grid_point(m) * (a + 1) / (L * (L + a) * (2 * eps + 1))
        return pref * hyp4f3(
            (1 - m, 1, a + 2, 2 * L + 2 * eps + m - 1),
            (L + 1, L + a + 1, 2 * eps + 2),
        )
    pref = (
        2
        * ctx.grid_point(m)
        * poch(2 * L + 2 * eps + m - 1, k - 1)
        * factorial_rat(m - 1)
        / factorial_rat(m - k)
    )
    pref *= poch(a + 1, k) / (poch(L, k) * poch(L + a, k) * poch(Rat(k) + 2 * eps, k))
    return pref * hyp4f3(
        (k - m, k + 1, k + a + 1, 2 * L + 2 * eps + m + k - 2),
        (L + k, L + a + k, 2 * Rat(k) + 2 * eps + 1),
    )


def E_composed(m: int, k: int, ctx: BasisCtx) -> Rat:
    """(e_m : g_k) composed through the f basis; identity-check companion
    of E_general."""
    return sum(
        (coeff_e_in_f(m, ell, ctx) * coeff_f_in_g(ell, k, ctx) for ell in range(k, m + 1)),
        ZERO,
    )


def E_closed(series: str, m: int, k: int, L: int) -> Rat:
    """Elementary factorial expression for (e_m : g_k) per series."""
    if m < 1:
        raise ValueError("E_closed requires m >= 1")
    if k > m:
        return ZERO
    if series == "C":
        if k == 0:
            return Rat(-2 * (m + 4 * L - 3) * (L + m),
                       (2 * L + m) * (2 * L + m - 1) * (2 * L + m - 2))
        return (
            2 * (k + 1) * factorial_rat(m - 1) * (2 * L - 2) * (2 * L - 1) * (L + m)
            * factorial_rat(2 * L + m - k - 3)
            / (factorial_rat(m - k) * factorial_rat(2 * L + m))
        )
    if series == "B":
        if k == 0:
            return Rat(-(2 * m + 6 * L - 5), (2 * L + m - 1) * (2 * L + m - 2))
        return (
            2 * (Rat(k) + Rat(1, 2)) * factorial_rat(m - 1) * (2 * L - 2) * (2 * L - 1)
            * factorial_rat(2 * L + m - k - 3)
            / (factorial_rat(m - k) * factorial_rat(2 * L + m - 1))
        )
    if series == "D":
        if k == 0:
            return Rat(-2, 2 * L + m - 2)
        return (
            2 * factorial_rat(m - 1) * (2 * L - 2) * factorial_rat(2 * L + m - k - 3)
            / (factorial_rat(m - k) * factorial_rat(2 * L + m - 2))
        )
    raise ValueError(f"unknown series tag {series!r}")


def transition_E(ctx: BasisCtx):
    """E(m, k) for the context: the elementary closed form when (a, eps)
    pins one of the three series, the 4F3 path otherwise."""
    tag = ctx.series
    if tag is not None:
        return lambda m, k: E_closed(tag, m, k, ctx.L)
    return lambda m, k: E_general(m, k, ctx)


def grid_residues(phi: EvenRatFn, ctx: BasisCtx):
    """Map m -> Res_{t=A_m} phi for the poles of phi; raises NotInSpace
    when a pole is off the positive grid."""
    out = {}
    for u in sorted(set(phi.poles)):
        root = rat_sqrt(u)
        m = None if root is None else ctx.grid_index(root)
        if m is None:
            raise NotInSpace(f"pole at u = {u} is not on the grid")
        out[m] = phi.residue_at(root)
    return out


def expand_in_g(phi: EvenRatFn, ctx: BasisCtx, E=None) -> dict:
    """Expansion coefficients {k: (phi : g_k)} of phi over the g basis.

    The k-th coefficient is the residue sum over grid poles with m >= k,
    plus the value at infinity for k = 0.  An explicit E(m, k) callable
    overrides the default choice of transition coefficients.
    """
    res = grid_residues(phi, ctx)
    if E is None:
        E = transition_E(ctx)
    coeffs = {}
    c0 = phi.at_infinity() + sum((r * E(m, 0) for m, r in res.items()), ZERO)
    if c0 != 0:
        coeffs[0] = c0
    for k in range(1, max(res, default=0) + 1):
        ck = sum((r * E(m, k) for m, r in res.items() if m >= k), ZERO)
        if ck != 0:
            coeffs[k] = ck
    return coeffs


def R_fn(series: str, k: int, L: int, t) -> Rat:
    """Rational interpolation of E(.., k) through the grid: R(A_m, k) =
    E(m, k) for every m >= 1.

    The gamma ratios become explicit linear factor lists whose common
    roots cancel; the surviving denominator roots are the true poles.  At
    a grid point with m < k the gamma expression is a zero divided by a
    gamma pole, so the interpolated value 0 is returned directly (the
    cancelled rational function would not vanish there once m drops below
    k - 2L + 3).
    """
    t = Rat(t)
    if L < 2:
        raise ValueError("R_fn requires L >= 2")
    if series == "C":
        if k == 0:
            den = (t + L) * (t + L - 1) * (t + L - 2)
            if den == 0:
                raise PoleError("R_fn(C, 0) evaluated at a pole")
            return -2 * t * (t + 3 * L - 3) / den
        eps = ONE
        pref = 2 * (k + 1) * (2 * L - 2) * (2 * L - 1)
        num_roots = [ZERO] + [Rat(L + k - 1 - i) for i in range(k - 1)]
        den_roots = [Rat(k + 2 - L - i) for i in range(k + 3)]
    elif series == "B":
        if k == 0:
            den = (t + L - Rat(1, 2)) * (t + L - Rat(3, 2))
            if den == 0:
                raise PoleError("R_fn(B, 0) evaluated at a pole")
            return -2 * (t + 2 * L - 2) / den
        eps = Rat(1, 2)
        pref = 2 * (Rat(k) + Rat(1, 2)) * (2 * L - 2) * (2 * L - 1)
        num_roots = [L + k - Rat(3, 2) - i for i in range(k - 1)]
        den_roots = [k + Rat(3, 2) - L - i for i in range(k + 2)]
    elif series == "D":
        if k == 0:
            if t + L - 1 == 0:
                raise PoleError("R_fn(D, 0) evaluated at a pole")
            return Rat(-2) / (t + L - 1)
        eps = ZERO
        pref = Rat(2 * (2 * L - 2))
        num_roots = [Rat(L + k - 2 - i) for i in range(k - 1)]
        den_roots = [Rat(k + 1 - L - i) for i in range(k + 1)]
    else:
        raise ValueError(f"unknown series tag {series!r}")
    m = t - L - eps + 1
    if m.denominator == 1 and m >= 1 and k > m:
        return ZERO
    for root in list(num_roots):
        if root in den_roots:
            num_roots.remove(root)
            den_roots.remove(root)
    out = pref
    for root in num_roots:
        out *= t - root
    for root in den_roots:
        if t == root:
            raise PoleError(f"R_fn({series}) evaluated at a pole")
        out /= t - root
    return out


def biortho_pairing(k: int, ell: int, series: str, L: int) -> Rat:
    """Residue-sum form of the contour pairing of g_ell against R_k;
    equals 1 when k = ell and 0 otherwise."""
    if k < 1 or ell < 1:
        raise ValueError("biortho_pairing requires k, ell >= 1")
    ctx = ctx_for_series(series, L)
    g = g_general(ell, ctx)
    return sum(
        (g.residue_at(ctx.grid_point(m)) * R_fn(series, k, L, ctx.grid_point(m))
         for m in range(1, ell + 1)),
        ZERO,
    )


def coeffs_to_json(coeffs: dict) -> dict:
    """CoeffVector serialization: {"k": "p/q"} with increasing keys."""
    from .exact import format_rat

    return {str(k): format_rat(v) for k, v in sorted(coeffs.items())}
