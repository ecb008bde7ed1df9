"""The branching engine: exact rows of the stochastic matrices.

A row is the family of weights kappa -> Lambda(nu, kappa) obtained when a
normalized character (or multivariate Jacobi polynomial) in N variables is
restricted to K < N variables.  Rows are computed determinantally: each
weight is d_K(kappa) times a K x K determinant of expansion coefficients of
the functions g_{K-j} * F_N over the g basis.

Two conventions for the index product d_K are floating around; they differ
by a constant factor, so exactly one of them can make the rows sum to 1.
The consistent one is ``normalized`` (the plain double product divided by
its value at the zero signature), which is the default everywhere and is
confirmed empirically by the verification suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .basis import E_general, expand_in_g, g_general
from .errors import NormalizationMismatch
from .exact import Rat, format_rat, poch
from .linalg import det
from .oracle import check_signature, shifted, signatures
from .ratfn import SERIES_PARAMS, BasisCtx, EvenRatFn, ctx_for_series

ZERO = Rat(0)
ONE = Rat(1)


def char_fn(nu, N: int, eps) -> EvenRatFn:
    """Characteristic function F_N of a signature: even rational, equal to
    1 at infinity, with simple poles on the positive grid."""
    nu = check_signature(nu, N)
    eps = Rat(eps)
    zeros = [(N - i + eps) ** 2 for i in range(1, N + 1)]
    poles = [(n + eps) ** 2 for n in shifted(nu)]
    return EvenRatFn.make(1, zeros, poles)


def d_K(kappa, eps, normalization: str = "normalized") -> Rat:
    """Index product of a signature: the double product of differences of
    squared shifted coordinates, either plain or divided by its value at
    the zero signature."""
    kappa = check_signature(kappa)
    K = len(kappa)
    eps = Rat(eps)

    def plain(sig):
        vals = [(sig[i] + K - 1 - i + eps) ** 2 for i in range(K)]
        out = ONE
        for i, j in combinations(range(K), 2):
            out *= vals[i] - vals[j]
        return out

    p = plain(kappa)
    if normalization == "plain":
        return p
    if normalization == "normalized":
        return p / plain((0,) * K)
    raise ValueError(f"unknown normalization {normalization!r}")


def _lambda_row(nu, N: int, K: int, ctx: BasisCtx, E=None, validate=True) -> dict:
    """Shared determinantal core. Returns {kappa: weight} with zero
    weights dropped; raises NormalizationMismatch when the row does not
    sum to 1."""
    nu = check_signature(nu, N)
    if not 1 <= K < N:
        raise ValueError("require 1 <= K < N")
    if ctx.L != N - K + 1:
        raise ValueError("context L must equal N - K + 1")
    F = char_fn(nu, N, ctx.eps)
    expansions = [expand_in_g(g_general(K - j, ctx) * F, ctx, E=E) for j in range(1, K + 1)]
    row = {}
    total = ZERO
    for kappa in signatures(K, nu[0] if nu else 0):
        ks = shifted(kappa)
        m = [[expansions[j].get(ks[i], ZERO) for j in range(K)] for i in range(K)]
        w = d_K(kappa, ctx.eps) * det(m)
        total += w
        if w != 0:
            row[kappa] = w
    if validate and total != 1:
        raise NormalizationMismatch(
            f"row for nu={nu}, N={N}, K={K} sums to {format_rat(total)}"
        )
    return row


def lambda_det(nu, N: int, K: int, series: str) -> dict:
    """Row of the branching matrix for one of the three distinguished
    series, with all transition coefficients taken from their elementary
    closed forms."""
    ctx = ctx_for_series(series, N - K + 1)
    return _lambda_row(nu, N, K, ctx)


def lambda_general(nu, N: int, K: int, a, eps) -> dict:
    """Row of the branching matrix for general parameters (a, eps), with
    transition coefficients computed through the terminating 4F3 sums."""
    ctx = BasisCtx(a, eps, N - K + 1)
    return _lambda_row(nu, N, K, ctx, E=lambda m, k: E_general(m, k, ctx))


def _k1_data(nu, N: int, series: str):
    if N < 2:
        raise ValueError("require N >= 2")
    if series not in SERIES_PARAMS:
        raise ValueError(f"unknown series tag {series!r}")
    _, eps = SERIES_PARAMS[series]
    # pole index and grid location of each row of nu (L = N here)
    ms = [nu[i] - i for i in range(N)]
    ts = [Rat(nu[i] + N - 1 - i) + eps for i in range(N)]
    return ms, ts


def k1_poly_value(nu, N: int, series: str, k, active) -> Rat:
    """One polynomial piece of the K = 1 row: the closed-form sum with a
    frozen set of contributing indices, evaluated at an arbitrary rational
    argument k.  With active = {i: nu_i - i + 1 >= k} this reproduces the
    actual row weight at integer k >= 1."""
    nu = check_signature(nu, N)
    ms, ts = _k1_data(nu, N, series)
    k = Rat(k)
    if series == "C":
        pref = 2 * (k + 1) * (N - 1) * (2 * N - 1)
    elif series == "B":
        pref = 2 * (k + Rat(1, 2)) * (N - 1) * (2 * N - 1)
    else:
        pref = Rat(2 * (N - 1))
    w = ZERO
    for i in active:
        den = ONE if series == "D" else ts[i]
        for r in range(N):
            if r != i:
                den *= ts[i] ** 2 - ts[r] ** 2
        w += poch(ms[i] + 1 - k, 2 * N - 3) / den
    return pref * w


def lambda_k1_closed(nu, N: int, series: str) -> dict:
    """K = 1 rows from the fully summed elementary expressions (finite
    sums over the rows of nu, no determinants and no residue machinery)."""
    nu = check_signature(nu, N)
    _, eps = SERIES_PARAMS[series]
    ms, ts = _k1_data(nu, N, series)
    row = {}
    w0 = ONE
    for i in range(N):
        if ms[i] < 1:
            continue
        t = ts[i]
        # elementary residue of the characteristic function at its i-th
        # pole; the endpoint term is residue times the k = 0 transition
        # coefficient (the residue factor must not be dropped, or the row
        # stops summing to 1)
        res = ONE
        for r in range(1, N + 1):
            res *= t ** 2 - (N - r + eps) ** 2
        res /= 2 * t
        for r in range(N):
            if r != i:
                res /= t ** 2 - ts[r] ** 2
        if series == "C":
            w0 -= res * 2 * t * (t + 3 * N - 3) / ((t + N) * (t + N - 1) * (t + N - 2))
        elif series == "B":
            w0 -= res * (2 * ms[i] + 6 * N - 5) / ((t + N - Rat(1, 2)) * (t + N - Rat(3, 2)))
        else:
            w0 -= res * 2 / (t + N - 1)
    if w0 != 0:
        row[(0,)] = w0
    for k in range(1, nu[0] + 1):
        active = [i for i in range(N) if ms[i] >= k]
        w = k1_poly_value(nu, N, series, k, active)
        if w != 0:
            row[(k,)] = w
    return row


def G_kappa_eval(kappa, ts, ctx: BasisCtx) -> Rat:
    """Schur-like ratio of determinants det[g_{k_i}(t_j)] / det[g_{K-i}(t_j)]
    at exact points ts."""
    kappa = check_signature(kappa)
    K = len(kappa)
    ts = tuple(Rat(t) for t in ts)
    if len(ts) != K:
        raise ValueError("need exactly K evaluation points")
    num = det([[g_general(ki, ctx)(t) for t in ts] for ki in shifted(kappa)])
    den = det([[g_general(K - i, ctx)(t) for t in ts] for i in range(1, K + 1)])
    if den == 0:
        raise ZeroDivisionError("denominator determinant vanished at these points")
    return num / den


def cauchy_residual(nu, N: int, K: int, ts, ctx: BasisCtx, row: dict = None) -> Rat:
    """prod_j F_N(t_j) minus the row-weighted sum of G_kappa over the
    support; exactly zero when the row is correct."""
    nu = check_signature(nu, N)
    if row is None:
        row = _lambda_row(nu, N, K, ctx)
    ts = tuple(Rat(t) for t in ts)
    F = char_fn(nu, N, ctx.eps)
    lhs = ONE
    for t in ts:
        lhs *= F(t)
    rhs = ZERO
    for kappa, w in row.items():
        rhs += w / d_K(kappa, ctx.eps) * G_kappa_eval(kappa, ts, ctx)
    return lhs - rhs


@dataclass(frozen=True)
class LambdaRow:
    """A computed row together with the parameters that produced it."""

    nu: tuple
    N: int
    K: int
    series: str
    a: object
    eps: object
    weights: dict

    @property
    def b(self) -> Rat:
        return 2 * Rat(self.eps) - 1 - Rat(self.a)

    def to_json(self) -> dict:
        out = {
            "nu": list(self.nu),
            "N": self.N,
            "K": self.K,
            "series": self.series,
            "weights": [
                {"kappa": list(kappa), "p": format_rat(w)}
                for kappa, w in sorted(self.weights.items())
            ],
        }
        if self.series == "general":
            out["a"] = format_rat(Rat(self.a))
            out["b"] = format_rat(self.b)
        return out


def make_row(nu, N: int, K: int, series: str = None, a=None, b=None) -> LambdaRow:
    """Compute a row and bundle it with its parameters.

    Either a series tag or the pair (a, b) must be given; a tag wins and
    routes through the closed forms.
    """
    nu = check_signature(nu, N)
    if series in SERIES_PARAMS:
        sa, seps = SERIES_PARAMS[series]
        weights = lambda_det(nu, N, K, series)
        return LambdaRow(nu, N, K, series, sa, seps, weights)
    if series not in (None, "general"):
        raise ValueError(f"unknown series tag {series!r}")
    if a is None or b is None:
        raise ValueError("general rows need both Jacobi parameters a and b")
    a, b = Rat(a), Rat(b)
    eps = (a + b + 1) / 2
    weights = lambda_general(nu, N, K, a, eps)
    return LambdaRow(nu, N, K, "general", a, eps, weights)
