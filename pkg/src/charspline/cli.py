"""Command-line interface.

Subcommands: lambda (one exact row), sample (seeded draws from a row),
spline (discrete B-spline table), basis (g_k / E(m,k) tables), verify
(identity suites).  Exact rationals are the wire truth; decimal columns are
convenience renderings at 15 significant digits.  Exit codes: 0 success,
1 failed verification, 2 parameter-domain violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from math import lcm

from .basis import g_series_coeffs, transition_E
from .engine import LambdaRow, make_row
from .errors import CharsplineError
from .exact import Rat, format_rat, parse_rat, rat_to_decimal
from .oracle import check_signature
from .ratfn import SERIES_PARAMS, BasisCtx, ctx_for_series
from .splines import discrete_bspline, discrete_bspline_support
from .verify import Caps, SUITES, run_suites


def _parse_nu(text: str, N: int):
    parts = [p for p in text.split(",") if p.strip() != ""]
    nu = tuple(int(p) for p in parts)
    if len(nu) > N:
        raise ValueError(f"nu has {len(nu)} parts but N = {N}")
    return check_signature(nu + (0,) * (N - len(nu)))


def _series_params(args):
    if args.series:
        tag = args.series.upper()
        if tag not in SERIES_PARAMS:
            raise ValueError(f"unknown series {args.series!r}")
        return tag, None, None
    if args.a is None or args.eps is None:
        raise ValueError("provide either --series or both --a and --eps")
    return None, parse_rat(args.a), parse_rat(args.eps)


def _compute_row(args) -> LambdaRow:
    nu = _parse_nu(args.nu, args.N)
    tag, a, eps = _series_params(args)
    if tag is not None:
        return make_row(nu, args.N, args.K, series=tag)
    b = 2 * eps - 1 - a
    return make_row(nu, args.N, args.K, a=a, b=b)


def cmd_lambda(args) -> int:
    row = _compute_row(args)
    if args.format == "json":
        json.dump(row.to_json(), sys.stdout)
        sys.stdout.write("\n")
    else:
        w = csv.writer(sys.stdout)
        w.writerow(["kappa", "p", "decimal"])
        for kappa, weight in sorted(row.weights.items()):
            w.writerow([
                ",".join(str(x) for x in kappa),
                format_rat(weight),
                rat_to_decimal(weight),
            ])
    return 0


def cmd_sample(args) -> int:
    row = _compute_row(args)
    items = sorted(row.weights.items())
    denom = lcm(*(int(Rat(w).denominator) for _, w in items))
    cumulative = []
    acc = 0
    for kappa, w in items:
        acc += int(Rat(w) * denom)
        cumulative.append((acc, kappa))
    if acc != denom:
        raise CharsplineError("weights do not sum to 1; refusing to sample")
    rng = random.Random(args.seed)
    for _ in range(args.count):
        r = rng.randrange(denom)
        kappa = next(kp for threshold, kp in cumulative if r < threshold)
        sys.stdout.write(",".join(str(x) for x in kappa) + "\n")
    return 0


def cmd_spline(args) -> int:
    if args.knots:
        knots = [int(p) for p in args.knots.split(",")]
    else:
        if args.nu is None or args.N is None:
            raise ValueError("provide --knots, or --nu and --N")
        nu = _parse_nu(args.nu, args.N)
        knots = [nu[i] - i for i in range(args.N)]
    lo, hi = discrete_bspline_support(knots)
    w = csv.writer(sys.stdout)
    w.writerow(["k", "p", "decimal"])
    for k in range(lo, hi + 1):
        v = discrete_bspline(k, knots)
        w.writerow([k, format_rat(v), rat_to_decimal(v)])
    return 0


def cmd_basis(args) -> int:
    tag, a, eps = _series_params(args)
    if tag is not None:
        ctx = ctx_for_series(tag, args.L)
    else:
        ctx = BasisCtx(a, eps, args.L)
    E = transition_E(ctx)
    e_table = [
        {"m": m, "k": k, "p": format_rat(E(m, k))}
        for m in range(1, args.maxm + 1)
        for k in range(0, min(m, args.maxk) + 1)
    ]
    g_table = [
        {
            "k": k,
            "f_coeffs": [format_rat(c) for c in g_series_coeffs(k, ctx)],
        }
        for k in range(args.maxk + 1)
    ]
    if args.format == "json":
        json.dump({"L": ctx.L, "a": format_rat(ctx.a), "eps": format_rat(ctx.eps),
                   "E": e_table, "g": g_table}, sys.stdout)
        sys.stdout.write("\n")
    else:
        w = csv.writer(sys.stdout)
        w.writerow(["m", "k", "p"])
        for entry in e_table:
            w.writerow([entry["m"], entry["k"], entry["p"]])
    return 0


def cmd_verify(args) -> int:
    caps = Caps(maxN=args.maxN, maxNu1=args.maxNu1, maxk=args.maxk, seed=args.seed)
    only = set(args.only.split(",")) if args.only else None
    if only:
        known = {name for name, _ in SUITES}
        unknown = only - known
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")
    failed = False
    for name, ok, detail in run_suites(caps, only=only):
        print(("PASS" if ok else "FAIL") + f" {name}: {detail}")
        failed = failed or not ok
    return 1 if failed else 0


def _add_param_flags(p, need_K=True):
    p.add_argument("--series", help="series tag C, B or D (case-insensitive)")
    p.add_argument("--a", help="Jacobi parameter a as p/q")
    p.add_argument("--eps", help="parameter eps = (a+b+1)/2 as p/q")
    p.add_argument("--nu", required=True, help="signature as comma list, e.g. 2,1,0")
    p.add_argument("--N", type=int, required=True)
    if need_K:
        p.add_argument("--K", type=int, required=True)


def build_parser():
    parser = argparse.ArgumentParser(prog="charspline")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="compute one exact row of the branching matrix")
    _add_param_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=cmd_lambda)

    p = sub.add_parser("sample", help="draw from a row by exact inverse-CDF sampling")
    _add_param_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("spline", help="tabulate a discrete B-spline")
    p.add_argument("--knots", help="strictly decreasing integer knots, comma list")
    p.add_argument("--nu", help="signature; knots become nu_i - i + 1")
    p.add_argument("--N", type=int)
    p.set_defaults(fn=cmd_spline)

    p = sub.add_parser("basis", help="dump g_k and E(m,k) tables")
    p.add_argument("--series")
    p.add_argument("--a")
    p.add_argument("--eps")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--maxk", type=int, default=6)
    p.add_argument("--maxm", type=int, default=8)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument("--maxN", type=int, default=4)
    p.add_argument("--maxNu1", type=int, default=2)
    p.add_argument("--maxk", type=int, default=6)
    p.add_argument("--seed", type=int, default=20260823)
    p.add_argument("--only", help="comma list of suite names")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CharsplineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
