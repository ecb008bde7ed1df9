"""Independent ground truth for the branching rows.

This module never touches the residue/determinant pipeline: rows are
recovered by evaluating normalized multivariate Jacobi polynomials at
deterministic rational sample points and solving the resulting exact
linear system.  It also houses the multiparameter/dual Schur functions and
the binomial and coherency identities used as cross-checks.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import DegenerateInput, RankDeficient
from .exact import Rat, factorial_rat, poch
from .linalg import det, solve

ZERO = Rat(0)
ONE = Rat(1)


# -- signatures -------------------------------------------------------------

def check_signature(nu, length=None):
    """Validate and normalize a weakly decreasing tuple of nonnegative ints."""
    nu = tuple(int(x) for x in nu)
    if any(nu[i] < nu[i + 1] for i in range(len(nu) - 1)) or (nu and nu[-1] < 0):
        raise ValueError(f"not a signature: {nu}")
    if length is not None and len(nu) != length:
        raise ValueError(f"signature {nu} does not have length {length}")
    return nu


def signatures(length: int, max_part: int):
    """All signatures of the given length with parts <= max_part, in
    lexicographic order."""
    if length == 0:
        yield ()
        return
    for first in range(max_part + 1):
        for rest in signatures(length - 1, first):
            yield (first,) + rest


def shifted(nu):
    """Strictly decreasing shifted coordinates n_i = nu_i + N - i."""
    n = len(nu)
    return tuple(nu[i] + n - 1 - i for i in range(n))


# -- univariate Jacobi ------------------------------------------------------

def jacobi_tilde(k: int, a, b, x) -> Rat:
    """Jacobi polynomial normalized to 1 at x = 1, via its finite sum."""
    a, b, x = Rat(a), Rat(b), Rat(x)
    if a <= -1 or b <= -1:
        raise ValueError("Jacobi parameters require a > -1, b > -1")
    two_eps = a + b + 1
    y = (1 - x) / 2
    total, term = ZERO, ONE
    for ell in range(k + 1):
        total += term * poch(-k, ell) * poch(k + two_eps, ell) / (poch(a + 1, ell) * factorial_rat(ell))
        term *= y
    return total


def jacobi_deriv_at_1(k: int, a, b, r: int) -> Rat:
    """r-th derivative of the normalized Jacobi polynomial at x = 1,
    divided by r!.  Termwise: only the ((1-x)/2)^r term survives."""
    if r > k:
        return ZERO
    a, b = Rat(a), Rat(b)
    two_eps = a + b + 1
    c_r = poch(-k, r) * poch(k + two_eps, r) / (poch(a + 1, r) * factorial_rat(r))
    return c_r * Rat(-1, 2) ** r


# -- multivariate Jacobi with confluent columns -----------------------------

@lru_cache(maxsize=None)
def _confluent_ratio(nu, N: int, K: int, a, b, xs) -> Rat:
    """det of the confluent matrix over the confluent Vandermonde and the
    all-ones reference determinant (un-calibrated)."""
    n = shifted(nu)
    rows = []
    for ni in n:
        row = [jacobi_tilde(ni, a, b, x) for x in xs]
        row += [jacobi_deriv_at_1(ni, a, b, r) for r in range(N - K)]
        rows.append(row)
    d = det(rows)
    cv = ONE
    for i, j in combinations(range(K), 2):
        cv *= xs[i] - xs[j]
    for x in xs:
        cv *= (x - 1) ** (N - K)
    d0 = det([
        [jacobi_deriv_at_1(ni, a, b, r) for r in range(N)] for ni in n
    ])
    if d0 == 0:
        raise DegenerateInput("all-ones normalization determinant vanished")
    return d / (cv * d0)


def multi_jacobi_eval(nu, N: int, K: int, a, b, xs) -> Rat:
    """Normalized N-variate Jacobi polynomial at (x_1..x_K, 1, ..., 1).

    The repeated argument 1 is handled by confluent derivative columns;
    normalization pins the value at (1, ..., 1) to exactly 1.
    """
    nu = check_signature(nu, N)
    if not 0 <= K <= N:
        raise ValueError("require 0 <= K <= N")
    xs = tuple(Rat(x) for x in xs)
    if len(xs) != K:
        raise ValueError("xs must have length K")
    if len(set(xs)) != K or any(x == 1 for x in xs):
        raise DegenerateInput("sample points must be distinct and different from 1")
    if K == 0 or all(p == 0 for p in nu):
        return ONE
    # dividing by the empty-signature instance cancels every convention
    # constant of the confluent limit
    return _confluent_ratio(nu, N, K, a, b, xs) / _confluent_ratio(
        (0,) * N, N, K, a, b, xs
    )


# -- multiparameter and dual Schur functions --------------------------------

def factorial_power(x, c, m: int) -> Rat:
    """(x | c)^m = (x - c(0)) ... (x - c(m-1)) for a parameter callable c."""
    out = ONE
    x = Rat(x)
    for i in range(m):
        out *= x - c(i)
    return out


def eps_squares(eps):
    """The standard parameter sequence c_i = (eps + i)^2."""
    eps = Rat(eps)
    return lambda i: (eps + i) ** 2


def zero_params(_i) -> Rat:
    return ZERO


def vandermonde(xs) -> Rat:
    out = ONE
    for i, j in combinations(range(len(xs)), 2):
        out *= xs[i] - xs[j]
    return out


def mp_schur(mu, N: int, xs, c) -> Rat:
    """Multiparameter Schur polynomial det[(x_i|c)^{mu_r+N-r}] / V(xs)."""
    mu = check_signature(mu, N)
    xs = tuple(Rat(x) for x in xs)
    if len(set(xs)) != N:
        raise DegenerateInput("mp_schur requires distinct points")
    v = vandermonde(xs)
    m = [[factorial_power(x, c, mu[r] + N - 1 - r) for r in range(N)] for x in xs]
    return det(m) / v


def dual_schur(mu, K: int, ys, c) -> Rat:
    """Dual Schur function: ratio of determinants of reciprocal factorial
    powers.  The parameter callable already carries the index shift, i.e.
    the factors of (y|c)^m are (y - c(0)) ... (y - c(m-1))."""
    mu = check_signature(mu, K)
    ys = tuple(Rat(y) for y in ys)
    if len(set(ys)) != K:
        raise DegenerateInput("dual_schur requires distinct points")
    top = []
    bottom = []
    for y in ys:
        powers = {}
        for r in range(K):
            for m in (mu[r] + K - 1 - r, K - 1 - r):
                if m not in powers:
                    fp = factorial_power(y, c, m)
                    if fp == 0:
                        raise DegenerateInput("sample point hits a parameter node")
                    powers[m] = 1 / fp
        top.append([powers[mu[r] + K - 1 - r] for r in range(K)])
        bottom.append([powers[K - 1 - r] for r in range(K)])
    den = det(bottom)
    if den == 0:
        raise DegenerateInput("dual_schur denominator determinant vanished")
    return det(top) / den


def dual_schur_denominator_closed(K: int, ys, c) -> Rat:
    """Closed form of the dual denominator determinant: signed Vandermonde
    over the product of factorial powers of order K-1."""
    ys = tuple(Rat(y) for y in ys)
    out = Rat(-1) ** (K * (K - 1) // 2) * vandermonde(ys)
    for y in ys:
        out /= factorial_power(y, c, K - 1)
    return out


# -- binomial formula and coherency relation --------------------------------

def binom_C(N: int, mu, a) -> Rat:
    """Normalization constant of the binomial formula, as Pochhammer
    products of the integer gamma gaps."""
    mu = check_signature(mu)
    if len(mu) > N:
        raise ValueError("signature longer than N")
    a = Rat(a)
    out = Rat(2) ** sum(mu)
    for i in range(len(mu)):
        out *= poch(N - i, mu[i]) * poch(N - i + a, mu[i])
    return out


def binomial_formula_residual(nu, N: int, alphas, a, b) -> Rat:
    """LHS - RHS of the binomial expansion of the normalized Jacobi
    polynomial at 1 + alpha; exact zero when the identity holds."""
    nu = check_signature(nu, N)
    alphas = tuple(Rat(al) for al in alphas)
    if len(set(alphas)) != N or any(al == 0 for al in alphas):
        raise DegenerateInput("alphas must be distinct and nonzero")
    eps = (Rat(a) + Rat(b) + 1) / 2
    xs = tuple(1 + al for al in alphas)
    lhs = multi_jacobi_eval(nu, N, N, a, b, xs)
    c = eps_squares(eps)
    n_sq = tuple((Rat(ni) + eps) ** 2 for ni in shifted(nu))
    rhs = ZERO
    for mu in signatures(N, nu[0] if nu else 0):
        s_left = mp_schur(mu, N, n_sq, c)
        if s_left == 0:
            continue
        rhs += s_left / binom_C(N, mu, a) * mp_schur(mu, N, alphas, zero_params)
    return lhs - rhs


def coherency_residual(nu, N: int, K: int, mu, row: dict, a, eps) -> Rat:
    """LHS - RHS of the coherency relation for a computed row; the row may
    come from any path (oracle or determinantal engine)."""
    nu = check_signature(nu, N)
    mu = check_signature(mu, K)
    a, eps = Rat(a), Rat(eps)
    c = eps_squares(eps)
    mu_padded = mu + (0,) * (N - K)
    n_sq = tuple((Rat(ni) + eps) ** 2 for ni in shifted(nu))
    lhs = mp_schur(mu_padded, N, n_sq, c) / binom_C(N, mu_padded, a)
    rhs = ZERO
    cK = binom_C(K, mu, a)
    for kappa, weight in row.items():
        k_sq = tuple((Rat(ki) + eps) ** 2 for ki in shifted(kappa))
        rhs += weight * mp_schur(mu, K, k_sq, c) / cK
    return lhs - rhs


# -- linear-solve oracle for the branching rows ------------------------------

SAMPLE_DENOM = 1009
MAX_RESAMPLE_ROUNDS = 3


def lambda_oracle(nu, N: int, K: int, a, b, schedule_offset: int = 0) -> dict:
    """Branching row recovered by interpolation: evaluate the restriction
    identity at deterministic rational points and solve for the weights.

    Sample points come from the fixed pool 1 + j/1009; the pool indices for
    each evaluation are scattered by a seeded generator.  A regular stride
    would put every configuration on one low-degree curve, on which the
    restricted polynomials are linearly dependent as soon as the support
    outgrows the curve degree, so scattering is essential, not cosmetic.

    Support enumeration uses the necessary condition kappa_1 <= nu_1;
    completeness is certified downstream by the exact row-sum check.
    K = N is permitted as a test-only identity path.
    """
    import random

    nu = check_signature(nu, N)
    if not 1 <= K <= N:
        raise ValueError("require 1 <= K <= N")
    support = list(signatures(K, nu[0] if nu else 0))
    size = len(support)
    for round_ in range(MAX_RESAMPLE_ROUNDS):
        rng = random.Random(f"{schedule_offset}:{round_}:{size}:{K}")
        pool = rng.sample(range(1, 50 * size * K + 1), size * K)
        matrix = []
        rhs = []
        for s in range(size):
            xs = tuple(
                1 + Rat(j, SAMPLE_DENOM) for j in sorted(pool[s * K:(s + 1) * K])
            )
            matrix.append([multi_jacobi_eval(kp, K, K, a, b, xs) for kp in support])
            rhs.append(multi_jacobi_eval(nu, N, K, a, b, xs))
        sol = solve(matrix, rhs)
        if sol is not None:
            return {kp: w for kp, w in zip(support, sol) if w != 0}
    raise RankDeficient("sample schedule never reached full rank")
