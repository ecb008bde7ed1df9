"""Identity verification suites.

Each suite checks one family of exactly verifiable identities and returns
(ok, detail).  Suites are pure functions of their size caps, so the same
code backs both the CLI ``verify`` command and the test suite.  All checks
are exact; the single approximate check in the repository (the Riemann sum
for the continuous B-spline density) lives in the test suite instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .basis import (
    E_closed,
    E_composed,
    E_general,
    biortho_pairing,
    expand_in_g,
    g_closed,
    g_general,
    g_value,
)
from .engine import G_kappa_eval, cauchy_residual, d_K, char_fn, lambda_det, lambda_general, lambda_k1_closed, _lambda_row
from .exact import Rat, factorial_rat, format_rat, poch
from .linalg import det
from .oracle import (
    binomial_formula_residual,
    coherency_residual,
    dual_schur,
    eps_squares,
    lambda_oracle,
    mp_schur,
    shifted,
    signatures,
)
from .ratfn import SERIES_PARAMS, BasisCtx, ctx_for_series
from .splines import discrete_bspline, discrete_bspline_support, lambda_typeA_k1, spline_shape_report

ZERO = Rat(0)
ONE = Rat(1)

SERIES = ("C", "B", "D")
# general-parameter probe point used across suites: a = 0, eps = 1/2
GENERAL_POINT = (Rat(0), Rat(1, 2))


@dataclass
class Caps:
    """Size caps for the suites; the defaults match the default verify run."""

    maxN: int = 4
    maxNu1: int = 2
    maxL: int = 4
    maxk: int = 6
    seed: int = 20260823


def _param_sets():
    out = [(tag,) + SERIES_PARAMS[tag] for tag in SERIES]
    out.append(("general",) + GENERAL_POINT)
    return out


def _rational_points(rng, count, denom=7):
    """Distinct nonzero rationals with denominator denom; never on any grid
    (grid points have denominator 1 or 2)."""
    out = set()
    while len(out) < count:
        n = rng.randrange(1, 60 * denom)
        if n % denom:
            out.add(Rat(n, denom))
    return sorted(out)


def _row_for(tag, a, eps, nu, N, K):
    if tag == "general":
        return lambda_general(nu, N, K, a, eps)
    return lambda_det(nu, N, K, tag)


# -- suites ------------------------------------------------------------------

def suite_stochasticity(caps: Caps):
    rows = 0
    for tag in SERIES:
        for N in range(2, caps.maxN + 1):
            for nu in signatures(N, caps.maxNu1):
                for K in range(1, N):
                    row = lambda_det(nu, N, K, tag)
                    bad = [kp for kp, w in row.items() if w < 0]
                    if bad:
                        return False, f"negative weight at nu={nu} N={N} K={K} series={tag} kappa={bad[0]}"
                    rows += 1
    return True, f"{rows} rows: nonnegative, exact sum 1"


def suite_oracle_equivalence(caps: Caps):
    rows = 0
    for tag, a, eps in _param_sets():
        b = 2 * eps - 1 - a
        for N in range(2, caps.maxN + 1):
            for nu in signatures(N, caps.maxNu1):
                for K in range(1, N):
                    got = _row_for(tag, a, eps, nu, N, K)
                    want = lambda_oracle(nu, N, K, a, b)
                    if got != want:
                        return False, f"mismatch at nu={nu} N={N} K={K} params={tag}"
                    rows += 1
    return True, f"{rows} rows equal the interpolation oracle entrywise"


def suite_semigroup(caps: Caps):
    checks = 0
    for tag in SERIES:
        cache = {}

        def row(nu, N, K):
            key = (nu, N, K)
            if key not in cache:
                cache[key] = lambda_det(nu, N, K, tag)
            return cache[key]

        for (N, mid, K) in ((4, 3, 2), (3, 2, 1)):
            for nu in signatures(N, caps.maxNu1):
                direct = row(nu, N, K)
                composed = {}
                for mu, w in row(nu, N, mid).items():
                    for kp, v in row(mu, mid, K).items():
                        composed[kp] = composed.get(kp, ZERO) + w * v
                composed = {kp: w for kp, w in composed.items() if w != 0}
                if direct != composed:
                    return False, f"semigroup fails at nu={nu} N={N} K={K} series={tag}"
                checks += 1
    return True, f"{checks} composition identities hold exactly"


def suite_g_closed_forms(caps: Caps):
    rng = random.Random(caps.seed)
    ts = _rational_points(rng, 10)
    checks = 0
    for tag in SERIES:
        for L in range(2, caps.maxL + 1):
            ctx = ctx_for_series(tag, L)
            for k in range(6):
                g = g_general(k, ctx)
                for t in ts:
                    closed = g_closed(tag, k, L, t)
                    if closed != g(t) or closed != g_value(k, ctx, t):
                        return False, f"g mismatch at series={tag} L={L} k={k} t={format_rat(t)}"
                    checks += 1
    return True, f"{checks} evaluations: closed form = factored form = series"


def suite_e_closed_forms(caps: Caps):
    checks = 0
    for tag in SERIES:
        for L in range(2, caps.maxL + 1):
            ctx = ctx_for_series(tag, L)
            for m in range(1, 9):
                for k in range(0, m + 1):
                    vals = {
                        E_closed(tag, m, k, L),
                        E_general(m, k, ctx),
                        E_composed(m, k, ctx),
                    }
                    if len(vals) != 1:
                        return False, f"E mismatch at series={tag} L={L} m={m} k={k}"
                    checks += 1
    return True, f"{checks} coefficients: closed = 4F3 = composed-through-f"


def suite_structure(caps: Caps):
    checks = 0
    for tag, a, eps in _param_sets():
        L = 3
        ctx = BasisCtx(a, eps, L)
        for m in range(1, 9):
            for k in range(m + 1, m + 4):
                if E_general(m, k, ctx) != 0:
                    return False, f"triangularity fails at params={tag} m={m} k={k}"
                checks += 1
            total = sum((E_general(m, k, ctx) for k in range(0, m + 1)), ZERO)
            if total != 0:
                return False, f"sum_k E({m},k) = {format_rat(total)} != 0 at params={tag}"
            checks += 1
    return True, f"{checks} structure checks (triangularity, zero row sums)"


def suite_telescoping(caps: Caps):
    def s_sum(m, M, weight):
        return M * sum(
            (factorial_rat(M + m - k - 1) / factorial_rat(m - k) * weight(k)
             for k in range(1, m + 1)),
            ZERO,
        )

    checks = 0
    for m in range(1, 13):
        for M in range(1, 11):
            sd = s_sum(m, M, lambda k: ONE)
            sc = s_sum(m, M, lambda k: Rat(k + 1))
            sb = s_sum(m, M, lambda k: Rat(2 * k + 1))
            base = factorial_rat(M + m - 1) / factorial_rat(m - 1)
            if sd != base:
                return False, f"S_D fails at m={m} M={M}"
            if sc != base * (m + 2 * M + 1) / (M + 1):
                return False, f"S_C fails at m={m} M={M}"
            if sb != base * (2 * m + 3 * M + 1) / (M + 1):
                return False, f"S_B fails at m={m} M={M}"
            if m >= 2:
                sd1 = s_sum(m - 1, M + 1, lambda k: ONE)
                if (2 * m + 1) * sd - sb != 2 * M * sd1 / (M + 1):
                    return False, f"B reduction fails at m={m} M={M}"
                if (m + 1) * sd - sc != M * sd1 / (M + 1):
                    return False, f"C reduction fails at m={m} M={M}"
            checks += 1
    return True, f"{checks} telescoping identities hold exactly"


def suite_cauchy(caps: Caps):
    rng = random.Random(caps.seed + 1)
    rows = 0
    for tag, a, eps in _param_sets():
        for N in range(2, caps.maxN + 1):
            for nu in signatures(N, caps.maxNu1):
                for K in range(1, N):
                    ctx = BasisCtx(a, eps, N - K + 1)
                    row = _row_for(tag, a, eps, nu, N, K)
                    for _ in range(3):
                        ts = _rational_points(rng, K)
                        r = cauchy_residual(nu, N, K, ts, ctx, row=row)
                        if r != 0:
                            return False, f"residual {format_rat(r)} at nu={nu} N={N} K={K} params={tag}"
                    rows += 1
    return True, f"{rows} rows satisfy the product expansion at 3 points each"


def suite_binomial(caps: Caps):
    rng = random.Random(caps.seed + 2)
    instances = [
        ((2, 0), 2, SERIES_PARAMS["C"]),
        ((1, 1), 2, SERIES_PARAMS["B"]),
        ((2, 1, 0), 3, SERIES_PARAMS["D"]),
        ((1, 0, 0), 3, GENERAL_POINT),
        ((2, 2, 1), 3, SERIES_PARAMS["C"]),
    ]
    for nu, N, (a, eps) in instances:
        b = 2 * eps - 1 - a
        alphas = _rational_points(rng, N)
        r = binomial_formula_residual(nu, N, alphas, a, b)
        if r != 0:
            return False, f"residual {format_rat(r)} at nu={nu} a={format_rat(a)}"
    return True, f"{len(instances)} instances of the binomial expansion hold"


def suite_coherency(caps: Caps):
    instances = [
        ((2, 0), 2, 1, (1,), SERIES_PARAMS["C"]),
        ((1, 1), 2, 1, (1,), SERIES_PARAMS["B"]),
        ((2, 1, 0), 3, 2, (1, 0), SERIES_PARAMS["D"]),
        ((2, 1, 0), 3, 2, (2, 1), GENERAL_POINT),
        ((1, 1, 1), 3, 1, (1,), SERIES_PARAMS["D"]),
    ]
    for nu, N, K, mu, (a, eps) in instances:
        tag = next((t for t, p in SERIES_PARAMS.items() if p == (a, eps)), "general")
        row = _row_for(tag, a, eps, nu, N, K)
        r = coherency_residual(nu, N, K, mu, row, a, eps)
        if r != 0:
            return False, f"residual {format_rat(r)} at nu={nu} K={K} mu={mu}"
    return True, f"{len(instances)} coherency relations hold for computed rows"


def _dual_expansion_coeff(mu, kappa, ctx):
    K = len(kappa)
    a, eps, L = ctx.a, ctx.eps, ctx.L
    ms = [mu[i] + K - 1 - i for i in range(K)]
    out = ONE
    for i in range(K):
        mi, ko = ms[i], K - 1 - i
        out *= (
            poch(L, mi) * poch(L + a, mi) * poch(a + 1, ko) * factorial_rat(ko)
            / (poch(a + 1, mi) * factorial_rat(mi) * poch(L, ko) * poch(L + a, ko))
        )
    ksq = tuple((Rat(k) + eps) ** 2 for k in shifted(kappa))
    return out * mp_schur(mu, K, ksq, eps_squares(eps))


def suite_dual_expansion(caps: Caps):
    """G_kappa / d_K reconstructed through dual Schur functions."""
    rng = random.Random(caps.seed + 3)
    checks = 0
    for tag, a, eps in _param_sets():
        for L in (2, 3):
            ctx = BasisCtx(a, eps, L)
            for kappa in ((1, 0), (2, 1), (2, 2)):
                K = len(kappa)
                c = lambda i: (Rat(L) + eps + i) ** 2
                for _ in range(2):
                    ts = _rational_points(rng, K)
                    lhs = G_kappa_eval(kappa, ts, ctx) / d_K(kappa, eps)
                    usq = tuple(t * t for t in ts)
                    rhs = ZERO
                    for mu in signatures(K, kappa[0]):
                        if any(mu[i] > kappa[i] for i in range(K)):
                            continue
                        rhs += _dual_expansion_coeff(mu, kappa, ctx) * dual_schur(mu, K, usq, c)
                    if lhs != rhs:
                        return False, f"mismatch at kappa={kappa} L={L} params={tag}"
                    checks += 1
    return True, f"{checks} dual-Schur reconstructions of G/d agree"


def suite_biortho(caps: Caps):
    checks = 0
    for tag in SERIES:
        for L in (2, 3, 4):
            for k in range(1, caps.maxk + 1):
                for ell in range(1, caps.maxk + 1):
                    got = biortho_pairing(k, ell, tag, L)
                    if got != (ONE if k == ell else ZERO):
                        return False, f"pairing ({k},{ell}) = {format_rat(got)} at series={tag} L={L}"
                    checks += 1
    return True, f"{checks} pairings form an exact identity matrix"


def suite_k1_consistency(caps: Caps):
    maxN = max(caps.maxN, 3)
    rows = 0
    for tag in SERIES:
        a, eps = SERIES_PARAMS[tag]
        b = 2 * eps - 1 - a
        for N in range(2, maxN + 1):
            for nu in signatures(N, caps.maxNu1):
                closed = lambda_k1_closed(nu, N, tag)
                if closed != lambda_det(nu, N, 1, tag):
                    return False, f"closed form != determinant at nu={nu} series={tag}"
                if closed != lambda_oracle(nu, N, 1, a, b):
                    return False, f"closed form != oracle at nu={nu} series={tag}"
                rows += 1
    return True, f"{rows} K=1 rows: closed form = determinant = oracle"


def suite_spline_shape(caps: Caps):
    checked = 0
    for tag in SERIES:
        for N in range(2, min(caps.maxN, 4) + 1):
            for nu in signatures(N, min(caps.maxNu1 + 2, 4)):
                rep = spline_shape_report(nu, N, tag)
                if not rep["ok"]:
                    return False, f"shape certificate fails at nu={nu} N={N} series={tag}"
                checked += 1
    return True, f"{checked} rows certified piecewise polynomial of the expected degree"


def suite_splines(caps: Caps):
    rng = random.Random(caps.seed + 4)
    for _ in range(10):
        n = rng.randrange(2, 7)
        knots = []
        y = rng.randrange(-5, 15)
        for _i in range(n):
            knots.append(y)
            y -= rng.randrange(1, 4)
        lo, hi = discrete_bspline_support(knots)
        total = sum((discrete_bspline(x, knots) for x in range(lo, hi + 1)), ZERO)
        if total != 1:
            return False, f"normalization fails for knots {tuple(knots)}"
        if any(discrete_bspline(x, knots) != 0 for x in (lo - 1, lo - 2, hi + 1, hi + 2)):
            return False, f"support law fails for knots {tuple(knots)}"
    rows = 0
    for N in range(2, 6):
        for nu in signatures(N, 4):
            lo = nu[-1] - N + 1 + N - 2
            hi = nu[0]
            total = sum((lambda_typeA_k1(nu, N, k) for k in range(lo, hi + 1)), ZERO)
            if total != 1:
                return False, f"type-A row fails to normalize at nu={nu} N={N}"
            rows += 1
    return True, f"10 random knot vectors and {rows} type-A rows pass"


def _dk_row_sum(nu, N, K, ctx, conv):
    F = char_fn(nu, N, ctx.eps)
    expansions = [expand_in_g(g_general(K - j, ctx) * F, ctx) for j in range(1, K + 1)]
    total = ZERO
    for kappa in signatures(K, nu[0]):
        ks = shifted(kappa)
        m = [[expansions[j].get(ks[i], ZERO) for j in range(K)] for i in range(K)]
        total += d_K(kappa, ctx.eps, conv) * det(m)
    return total


def suite_dk_normalization(caps: Caps):
    """Arbiter for the two conventions of the index product d_K.

    Discriminating instances only: for series D at K = 2 the plain double
    product already equals 1 at the zero signature, so the conventions
    coincide there and K = 3 is used instead.
    """
    winners = set()
    for tag in SERIES:
        K = 3 if tag == "D" else 2
        N = K + 1
        ctx = ctx_for_series(tag, 2)
        for head in ((2, 1), (1, 1), (2, 0)):
            nu = head + (0,) * (N - 2)
            sums = {
                conv: _dk_row_sum(nu, N, K, ctx, conv)
                for conv in ("normalized", "plain")
            }
            ok = [conv for conv, s in sums.items() if s == 1]
            if len(ok) != 1:
                return False, f"ambiguous arbiter at nu={nu} series={tag}: {sums}"
            winners.update(ok)
    if winners != {"normalized"}:
        return False, f"unexpected winning convention: {winners}"
    return True, "convention 'normalized' (divided by the zero-signature product) gives row sums 1; 'plain' does not"


SUITES = (
    ("stochasticity", suite_stochasticity),
    ("oracle-equivalence", suite_oracle_equivalence),
    ("semigroup", suite_semigroup),
    ("g-closed-forms", suite_g_closed_forms),
    ("e-closed-forms", suite_e_closed_forms),
    ("structure", suite_structure),
    ("telescoping", suite_telescoping),
    ("cauchy", suite_cauchy),
    ("binomial", suite_binomial),
    ("coherency", suite_coherency),
    ("dual-expansion", suite_dual_expansion),
    ("biortho", suite_biortho),
    ("k1-consistency", suite_k1_consistency),
    ("spline-shape", suite_spline_shape),
    ("splines", suite_splines),
    ("d-k-normalization", suite_dk_normalization),
)


def run_suites(caps: Caps = None, only=None):
    """Run suites in fixed order; returns [(name, ok, detail)]."""
    caps = caps or Caps()
    results = []
    for name, fn in SUITES:
        if only and name not in only:
            continue
        ok, detail = fn(caps)
        results.append((name, ok, detail))
    return results
