"""Even rational functions of t in factored form.

Every function in the pipeline is even in t, so everything is stored in the
variable u = t^2: a function is

    f(t) = scale * num(u) * prod(u - z_i) / prod(u - p_j),      u = t^2.

``zeros`` and ``poles`` are multisets of rational u-values.  ``num`` is an
extra polynomial factor in u: the hypergeometric basis functions have
rational pole grids but generically irrational zeros, so the part of the
numerator that does not factor over the rationals is carried as raw
coefficients.  Construction cancels common zero/pole entries and divides
out any pole that is a rational root of ``num``, so surviving poles are
genuine.

Addition of factored functions is deliberately not part of the public
surface: linear combinations live in coefficient space (expansions over a
basis), and the algorithms only ever multiply functions.  A recombining sum
is provided for diagnostics and residue-linearity checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MultiplePoleError, NotRegularAtInfinity, PoleError
from .exact import Rat, format_rat

ZERO = Rat(0)
ONE = Rat(1)


# -- polynomial helpers (coefficients ascending in u) --

def poly_eval(coeffs, u):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


def poly_mul(a, b):
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


def poly_add(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO)
        for i in range(n)
    )


def poly_scale(a, s):
    return tuple(c * s for c in a)


def poly_from_roots(roots):
    out = (ONE,)
    for r in roots:
        out = poly_mul(out, (-Rat(r), ONE))
    return out


def poly_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_div_linear(a, r):
    """Exact quotient of a(u) by (u - r); a(r) must be zero."""
    r = Rat(r)
    out = [ZERO] * (len(a) - 1)
    carry = ZERO
    for i in range(len(a) - 1, 0, -1):
        carry = a[i] + carry * r
        out[i - 1] = carry
    assert a[0] + carry * r == 0, "poly_div_linear: nonzero remainder"
    return poly_trim(out)


@dataclass(frozen=True)
class EvenRatFn:
    """Factored even rational function of t (stored in u = t^2)."""

    scale: object
    zeros: tuple = ()
    poles: tuple = ()
    num: tuple = (ONE,)

    @staticmethod
    def make(scale, zeros=(), poles=(), num=None) -> "EvenRatFn":
        """Construct with cancellation of common zero/pole factors."""
        scale = Rat(scale)
        num = poly_trim(tuple(Rat(c) for c in (num if num is not None else (1,))))
        if scale == 0 or num == (ZERO,):
            return EvenRatFn(ZERO, (), (), (ONE,))
        zs = sorted((Rat(z) for z in zeros))
        ps = sorted((Rat(p) for p in poles))
        # cancel multiset intersection of factored zeros and poles
        out_p = []
        for p in ps:
            try:
                zs.remove(p)
            except ValueError:
                out_p.append(p)
        # divide out poles that are rational roots of the numerator polynomial
        ps, out_p = out_p, []
        for p in ps:
            if len(num) > 1 and poly_eval(num, p) == 0:
                num = poly_div_linear(num, p)
            else:
                out_p.append(p)
        return EvenRatFn(scale, tuple(zs), tuple(out_p), num)

    @staticmethod
    def constant(c) -> "EvenRatFn":
        return EvenRatFn.make(c)

    def is_zero(self) -> bool:
        return self.scale == 0

    def eval(self, t) -> Rat:
        """Exact value at a rational t; raises PoleError at poles."""
        u = Rat(t) * Rat(t)
        val = self.scale * poly_eval(self.num, u)
        for z in self.zeros:
            val *= u - z
        for p in self.poles:
            if u == p:
                raise PoleError(f"t^2 = {format_rat(p)} is a pole")
            val /= u - p
        return val

    __call__ = eval

    def mul(self, other: "EvenRatFn") -> "EvenRatFn":
        return EvenRatFn.make(
            self.scale * other.scale,
            self.zeros + other.zeros,
            self.poles + other.poles,
            poly_mul(self.num, other.num),
        )

    __mul__ = mul

    def residue_at(self, a) -> Rat:
        """Residue at t = a > 0; zero when a^2 is not a pole.

        Only simple poles are supported; a multiplicity >= 2 pole raises
        loudly rather than returning nonsense.
        """
        a = Rat(a)
        if a <= 0:
            raise ValueError("residue_at expects a positive grid point")
        u0 = a * a
        mult = self.poles.count(u0)
        if mult == 0:
            return ZERO
        if mult > 1:
            raise MultiplePoleError(f"pole at t^2 = {format_rat(u0)} has multiplicity {mult}")
        val = self.scale * poly_eval(self.num, u0)
        for z in self.zeros:
            val *= u0 - z
        skipped = False
        for p in self.poles:
            if not skipped and p == u0:
                skipped = True
                continue
            val /= u0 - p
        return val / (2 * a)

    def numerator_degree(self) -> int:
        return len(self.zeros) + len(self.num) - 1

    def at_infinity(self) -> Rat:
        """Limit value as t -> infinity."""
        if self.is_zero():
            return ZERO
        nd, pd = self.numerator_degree(), len(self.poles)
        if nd > pd:
            raise NotRegularAtInfinity(f"numerator degree {nd} > pole count {pd}")
        if nd < pd:
            return ZERO
        return self.scale * self.num[-1]

    def full_numerator(self) -> tuple:
        """Fully expanded numerator polynomial scale*num*prod(u - z)."""
        return poly_scale(poly_mul(self.num, poly_from_roots(self.zeros)), self.scale)

    def __str__(self) -> str:
        parts = [format_rat(self.scale)]
        if self.num != (ONE,):
            parts.append("(" + " + ".join(
                f"{format_rat(c)}*u^{i}" for i, c in enumerate(self.num) if c != 0
            ) + ")")
        parts += [f"(u - {format_rat(z)})" for z in self.zeros]
        top = " * ".join(parts)
        if not self.poles:
            return top
        bottom = " * ".join(f"(u - {format_rat(p)})" for p in self.poles)
        return f"{top} / [{bottom}]"


def recombined_sum(f: EvenRatFn, g: EvenRatFn) -> EvenRatFn:
    """f + g over the common denominator. Diagnostic helper only."""
    num = poly_add(
        poly_mul(f.full_numerator(), poly_from_roots(g.poles)),
        poly_mul(g.full_numerator(), poly_from_roots(f.poles)),
    )
    return EvenRatFn.make(1, (), f.poles + g.poles, num)


@dataclass(frozen=True)
class BasisCtx:
    """Parameter bundle (a, eps, L) for the even-rational-function space.

    The second Jacobi parameter is b = 2*eps - 1 - a; the pole grid is
    A_m = L + eps + m - 1 for m >= 1.
    """

    a: object
    eps: object
    L: int

    def __post_init__(self):
        object.__setattr__(self, "a", Rat(self.a))
        object.__setattr__(self, "eps", Rat(self.eps))
        if self.a <= -1:
            raise ValueError("require a > -1")
        if self.eps < 0:
            raise ValueError("require eps >= 0")
        if self.b <= -1:
            raise ValueError("require b = 2*eps - 1 - a > -1")
        if self.L < 1:
            raise ValueError("require integer L >= 1")

    @property
    def b(self) -> Rat:
        return 2 * self.eps - 1 - self.a

    def grid_point(self, m: int) -> Rat:
        """A_m = L + eps + m - 1."""
        return Rat(self.L) + self.eps + m - 1

    def grid_index(self, a):
        """Inverse of grid_point: integer m >= 1 with A_m = a, else None."""
        m = Rat(a) - self.L - self.eps + 1
        if m.denominator == 1 and m >= 1:
            return int(m)
        return None

    @property
    def series(self):
        """ "C", "B" or "D" when (a, eps) matches one of the three
        symplectic/orthogonal parameter pairs, else None."""
        key = (self.a, self.eps)
        for tag, (a, eps) in SERIES_PARAMS.items():
            if key == (a, eps):
                return tag
        return None


SERIES_PARAMS = {
    "C": (Rat(1, 2), Rat(1)),
    "B": (Rat(1, 2), Rat(1, 2)),
    "D": (Rat(-1, 2), Rat(0)),
}


def ctx_for_series(series: str, L: int) -> BasisCtx:
    a, eps = SERIES_PARAMS[series]
    return BasisCtx(a, eps, L)
