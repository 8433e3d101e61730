"""Closed-form bounds on the degree deviation and the spectral radius.

Every evaluator computes its value even when its hypotheses fail and reports
the hypotheses separately, so callers can probe just outside them.
Upper bounds on ``s`` carry an exact representation (a max of terms
``a + b*sqrt(c)`` with rational a, b, c) for tolerance-free comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .graph import Graph, degree_stats

Number = float | Fraction | int


@dataclass(frozen=True)
class Surd:
    """The real number ``a + b*sqrt(c)`` with rational a, b and c >= 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    @property
    def value(self) -> float:
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * _sqrt(self.c)

    def compare(self, q: Fraction) -> int:
        """Sign of ``q - self``, exactly."""
        lhs = Fraction(q) - self.a  # compare lhs with b*sqrt(c)
        if self.b == 0 or self.c == 0:
            return (lhs > 0) - (lhs < 0)
        bs = self.b * self.b * self.c
        if self.b > 0:
            if lhs <= 0:
                return -1
            return (lhs * lhs > bs) - (lhs * lhs < bs)
        if lhs >= 0:
            return 1
        return (lhs * lhs < bs) - (lhs * lhs > bs)


def _sqrt(x) -> float:
    if isinstance(x, Fraction):
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return rn / rd
    return math.sqrt(x)


def _is_exact(*xs) -> bool:
    return all(isinstance(x, Rational) for x in xs)


@dataclass(frozen=True)
class BoundContext:
    n: int
    m: int
    d: Fraction
    delta_lo: int
    delta_hi: int
    s: Fraction

    @property
    def psi(self) -> Fraction:
        return min(self.d, self.n - 1 - self.d)

    @classmethod
    def from_graph(cls, g: Graph, delta_lo: int | None = None, delta_hi: int | None = None) -> BoundContext:
        """Context for ``g``; degree bounds default to the attained min/max degree."""
        st = degree_stats(g)
        lo = st.delta_min if delta_lo is None else delta_lo
        hi = st.delta_max if delta_hi is None else delta_hi
        if lo > st.delta_min or hi < st.delta_max:
            raise ValueError("degree bounds must sandwich the degree range")
        return cls(g.n, st.m, st.d, lo, hi, st.s)

    @classmethod
    def from_params(cls, n: int, m: int, delta_lo: int, delta_hi: int, s: Number = 0) -> BoundContext:
        return cls(n, m, Fraction(2 * m, n), delta_lo, delta_hi, Fraction(s))


@dataclass(frozen=True)
class BoundValue:
    value: float
    applicable: bool
    hypotheses: tuple[tuple[str, bool], ...] = ()
    terms: tuple[Surd, ...] = field(default=(), repr=False)

    @property
    def exact(self) -> bool:
        return bool(self.terms)

    def compare(self, q: Fraction) -> int:
        """Exact sign of ``q - value`` (needs ``terms``)."""
        signs = [t.compare(q) for t in self.terms]
        if any(sg < 0 for sg in signs):
            return -1
        return 0 if any(sg == 0 for sg in signs) else 1


def _bound(value, hyps: Sequence[tuple[str, bool]], terms: Sequence[Surd] = ()) -> BoundValue:
    hyps = tuple((name, bool(ok)) for name, ok in hyps)
    return BoundValue(float(value), all(ok for _, ok in hyps), hyps, tuple(terms))


# upper bounds on s ------------------------------------------------------------


def haviland_bound(ctx: BoundContext) -> BoundValue:
    psi = ctx.psi
    term = Surd(psi * (2 * ctx.n - 1), -psi, 4 * ctx.n * psi + 1)
    return _bound(term.value, [("n >= 1", ctx.n >= 1)], [term])


def ali_bound(ctx: BoundContext) -> BoundValue:
    n, d, lo, hi = ctx.n, ctx.d, ctx.delta_lo, ctx.delta_hi
    hyps = [("delta >= 1", lo >= 1), ("delta < d", lo < d), ("d < Delta", d < hi)]
    if lo <= 0 or (hi - d) * (d - lo) < 0:
        return _bound(math.nan, hyps)
    term = Surd(Fraction(0), d * n, (hi - d) * (d - lo) / Fraction(lo * hi))
    return _bound(term.value, hyps, [term])


def theorem1_bound(ctx: BoundContext) -> BoundValue:
    n, d, lo, hi = ctx.n, ctx.d, ctx.delta_lo, ctx.delta_hi
    hyps = [("0 <= delta", 0 <= lo), ("delta < d", lo < d), ("d < Delta", d < hi), ("Delta < n", hi < n)]
    if hi == lo:
        return _bound(math.nan, hyps)
    exact = Fraction(2 * n) * (hi - d) * (d - lo) / (hi - lo)
    return _bound(exact, hyps, [Surd(exact)])


def theorem1_exact(ctx: BoundContext) -> Fraction:
    return theorem1_bound(ctx).terms[0].a


def theorem2_bound(ctx: BoundContext) -> BoundValue:
    """Bound for the regime with lower degree bound 0 and few edges."""
    n, d, hi = ctx.n, ctx.d, ctx.delta_hi
    dn = d * n
    hyps = [("delta == 0", ctx.delta_lo == 0), ("0 < d", 0 < d), ("d < Delta", d < hi),
            ("Delta < n", hi < n), ("d <= n - 3", d <= n - 3), ("2*Delta <= dn", 2 * hi <= dn),
            ("dn < Delta*(Delta+1)", dn < hi * (hi + 1))]
    terms = []
    disc = (2 * hi + 1) ** 2 - 4 * dn
    if disc >= 0:
        terms.append(Surd((2 * hi + 1) * (hi - d), -(hi - d), Fraction(disc)))
    terms.append(Surd(d * (2 * n - 1), -d, 4 * dn + 1))
    return _bound(max(t.value for t in terms), hyps, terms)


def ali_equality_check(g: Graph) -> bool:
    """Whether ``g`` attains the Cauchy-Schwarz bound on ``s`` with equality.

    True iff every degree is the minimum or the maximum degree and
    ``|deg(u) - d| / deg(u)`` is the same for all vertices.
    """
    st = degree_stats(g)
    if st.delta_min < 1:
        raise ValueError("needs minimum degree >= 1")
    lo, hi, d = st.delta_min, st.delta_max, st.d
    if not set(st.degrees) <= {lo, hi}:
        return False
    ratios = {abs(k - d) / k for k in st.degrees}
    if len(ratios) != 1:
        return False
    if lo < hi:
        assert d == Fraction(2 * lo * hi, lo + hi)
    return True


def havi2_bound(n: Number, d: Number) -> tuple[float, float]:
    """The two members ``h <= h1`` of the chain bounding ``s`` for large ``d``."""
    k = n - d - 1
    h = k * (2 * n - 1 - _sqrt(4 * n * k + 1)) if k > 0 else 0.0
    h1 = (n - d) * (2 * n - _sqrt(4 * n * (n - d)))
    return float(h), float(h1)


def figure1_ratio(x: float, ratio: float) -> float:
    """Theorem-1 bound divided by the Cauchy-Schwarz bound, with delta=1, Delta=ratio, d=x."""
    if not 1 < x < ratio:
        raise ValueError(f"x must lie in (1, {ratio})")
    lo, hi, d = 1.0, float(ratio), float(x)
    num = 2 * (hi - d) * (d - lo) / (hi - lo)
    den = d * math.sqrt((hi - d) * (d - lo) / (lo * hi))
    return num / den


def figure2_curves(x: float) -> tuple[float, float]:
    """``(h1/n^2, s1/n^2)`` at ``x = d/n``."""
    h1 = (1 - x) * (2 - math.sqrt(4 * (1 - x)))
    s1 = (3 - 2 * x) * (2 * x + 1) * (24 * x**3 - 52 * x**2 + 26 * x + 13) / 192
    return h1, s1


# lower bounds on the spectral radius -------------------------------------------


def _exceeds_half_sqrt2(s, d, n) -> bool:
    """``s > dn/sqrt(2)``, compared on squares."""
    return 2 * s * s > (d * n) ** 2


def theorem3_bound(n: Number, d: Number, s: Number) -> BoundValue:
    hyps = [("s > 0", s > 0)]
    if s <= 0:
        return _bound(d, hyps)
    second = 2 * s / n
    if _exceeds_half_sqrt2(s, d, n):
        return _bound(second, hyps)
    first = d * d * n / _sqrt((d * n) ** 2 - s * s)
    if 2 * s * s == (d * n) ** 2:
        return _bound(max(float(first), float(second)), hyps)
    return _bound(first, hyps)


def theorem3_branches(n: Number, d: Number, s: Number) -> tuple[float, float]:
    """Both pieces evaluated regardless of the case split."""
    dn = float(d) * float(n)
    return float(d) ** 2 * float(n) / math.sqrt(dn * dn - float(s) ** 2), 2 * float(s) / float(n)


@dataclass(frozen=True)
class NikiforovBounds:
    """Bounds on ``lambda - d``."""

    lower6: float
    upper6: float
    lower7: float
    upper7: float
    zhang: float
    rw23: float


def nikiforov_bounds(n: Number, d: Number, m: Number, s: Number) -> NikiforovBounds:
    if m < 1:
        raise ValueError("needs m >= 1")
    s, n, m = float(s), float(n), float(m)
    return NikiforovBounds(
        lower6=s * s / (2 * n * n * math.sqrt(2 * m)),
        upper6=math.sqrt(s),
        lower7=s * s / (2 * n * n * math.sqrt(m)),
        upper7=math.sqrt(s / 2),
        zhang=math.sqrt(9 * s / 10),
        rw23=math.sqrt(2 * s / 3),
    )


def _niki_gap(n, d, s) -> float:
    return float(s) ** 2 / (float(n) ** 2 * math.sqrt(2 * float(d) * float(n)))


def corollary1_bound(n: Number, d: Number, s: Number) -> BoundValue:
    """Lower bound ``d + s^2/(n^2 sqrt(2dn))`` on lambda, main-text range."""
    above = _exceeds_half_sqrt2(s, d, n)
    hyps = [("s > 0", s > 0), ("s > dn/sqrt2 or d <= n/2", above or 2 * d <= n)]
    if d <= 0:
        return _bound(math.nan, hyps)
    return _bound(float(d) + _niki_gap(n, d, s), hyps)


def theorem_f1(n: Number, d: Number, s: Number) -> BoundValue:
    hyps = [("s > 0", s > 0), ("d > n/2", 2 * d > n)]
    n, d, s = float(n), float(d), float(s)
    return _bound(d + s**2 / n**3 - 2 * (d + n) * s**4 / n**8, hyps)


def f2_threshold(n: Number, d: Number) -> Number:
    """Lower end ``t`` of the deviation range covered by the F2 bound."""
    return Fraction(7, 10) * n * (d - Fraction(n, 2)) if _is_exact(n, d) else 0.7 * n * (d - n / 2)


def theorem_f2(n: Number, d: Number, s: Number) -> BoundValue:
    t = f2_threshold(n, d)
    hyps = [("s > 0", s > 0), ("d > n/2", 2 * d > n), ("d <= 0.8n", 5 * d <= 4 * n), ("s >= t", s >= t)]
    n, d, s = float(n), float(d), float(s)
    a, b = 3 * n - 2 * d, 2 * d + n
    value = d + 4 * s**2 / (n * a * b) - 24 * (2 * d - n) * s**3 / (n**2 * a**2 * b**2)
    return _bound(value, hyps)


def niki_bound(n: Number, d: Number, s: Number) -> BoundValue:
    """The conjectured lower bound, valid for every graph with ``s > 0``."""
    hyps = [("s > 0", s > 0)]
    if d <= 0:
        return _bound(math.nan, hyps)
    return _bound(float(d) + _niki_gap(n, d, s), hyps)


@dataclass(frozen=True)
class AppendixBounds:
    f1: BoundValue
    f2: BoundValue
    niki: BoundValue
    s0: float
    s1: float
    h1: float


def appendix_s0(n: Number, d: Number) -> float:
    n, d = float(n), float(d)
    rdn = math.sqrt(d * n)
    return 0.5 * math.sqrt(n**5 * (2 * rdn - math.sqrt(2) * n) / (rdn * (d + n)))


def appendix_s1(n: Number, d: Number) -> float:
    n, d = float(n), float(d)
    return (3 * n - 2 * d) * (2 * d + n) * (24 * d**3 - 52 * d**2 * n + 26 * d * n**2 + 13 * n**3) / (192 * n**3)


def appendix_bounds(n: Number, d: Number, s: Number) -> AppendixBounds:
    large_d = 2 * d > n
    return AppendixBounds(
        f1=theorem_f1(n, d, s),
        f2=theorem_f2(n, d, s),
        niki=niki_bound(n, d, s),
        s0=appendix_s0(n, d) if large_d else math.nan,
        s1=appendix_s1(n, d),
        h1=havi2_bound(n, d)[1],
    )
