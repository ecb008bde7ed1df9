"""Exact branching rows for symplectic/orthogonal characters and
multivariate Jacobi polynomials, with the B-splines they generalize."""

from .basis import (
    E_closed,
    E_composed,
    E_general,
    R_fn,
    biortho_pairing,
    expand_in_g,
    g_closed,
    g_general,
    g_value,
)
from .engine import (
    G_kappa_eval,
    LambdaRow,
    cauchy_residual,
    char_fn,
    d_K,
    lambda_det,
    lambda_general,
    lambda_k1_closed,
    make_row,
)
from .errors import (
    CharsplineError,
    DegenerateInput,
    MultiplePoleError,
    NormalizationMismatch,
    NotInSpace,
    NotRegularAtInfinity,
    PoleError,
    RankDeficient,
)
from .exact import Rat, format_rat, parse_rat, poch, rat_to_decimal
from .oracle import (
    binomial_formula_residual,
    coherency_residual,
    dual_schur,
    jacobi_tilde,
    lambda_oracle,
    mp_schur,
    multi_jacobi_eval,
    signatures,
)
from .ratfn import SERIES_PARAMS, BasisCtx, EvenRatFn, ctx_for_series
from .splines import (
    bspline,
    discrete_bspline,
    discrete_bspline_support,
    lambda_typeA_k1,
    spline_shape_report,
)
from .verify import Caps, run_suites

__version__ = "0.1.0"
