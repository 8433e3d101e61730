"""Quantities behind the lower bounds for average degree above n/2.

Imposing ``w_cross <= 1`` adds the lower bound ``L2`` on ``x_plus``. Along
``x_plus = L2(n_plus)`` the objective has a closed form whose unique
minimiser is the root ``p`` of a cubic; the remaining functions are the
successively weaker (but simpler) estimates of that minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..bounds import appendix_s0, appendix_s1, f2_threshold, havi2_bound
from .q import crossing_point, lower_l, lower_l2


def cubic(k, n, s):
    """``P(n_plus)``; its root is the minimiser of ``f`` along ``L2``."""
    return -2 * n**3 + 8 * n**2 * k - 12 * n * k**2 - n * s + 8 * k**3


def cubic_bracket(n, s):
    """``(p1, p2)`` with ``P(p1) < 0 < P(p2)``."""
    if isinstance(n, Rational) and isinstance(s, Rational):
        n, s = Fraction(n), Fraction(s)
    p2 = n / 2 + s / (2 * n)
    return p2 - s**3 / (2 * n**5), p2


def cubic_identities(n, s) -> tuple[bool, bool]:
    """Exact checks ``P(p2) = s^3/n^3`` and ``P(p1) = s^5(-3n^8+3n^4s^2-s^4)/n^15``."""
    n, s = Fraction(n), Fraction(s)
    p1, p2 = cubic_bracket(n, s)
    ok2 = cubic(p2, n, s) == s**3 / n**3
    ok1 = cubic(p1, n, s) == s**5 * (-3 * n**8 + 3 * n**4 * s**2 - s**4) / n**15
    return ok2, ok1


def _cubic_sign(y: float, n, s) -> int:
    """Exact sign of ``P(n/2 + y) = 8y^3 + 2n^2 y - ns`` at a float ``y``."""
    y, n, s = Fraction(y), Fraction(n), Fraction(s)
    v = 8 * y**3 + 2 * n * n * y - n * s
    return (v > 0) - (v < 0)


def cubic_root(n, s, rel_width: float = 1e-12) -> float:
    """Bisection for the root of the strictly increasing cubic inside its bracket.

    Works in the offset ``y = n_plus - n/2``, where the cubic has no quadratic
    term, and decides every sign exactly; near-zero values of ``P`` (small
    ``s``) would otherwise be lost to cancellation.
    """
    p1, p2 = cubic_bracket(Fraction(n), Fraction(s))
    half = Fraction(n) / 2
    lo, hi = float(p1 - half), float(p2 - half)
    if not _cubic_sign(lo, n, s) < 0 < _cubic_sign(hi, n, s):
        raise ArithmeticError("cubic bracket does not change sign")
    while hi - lo > rel_width * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _cubic_sign(mid, n, s) < 0:
            lo = mid
        else:
            hi = mid
    return float(n) / 2 + 0.5 * (lo + hi)


def _l2_radicand(k, n, s):
    q = 2 * n * k - 2 * k**2 - s
    return n * (4 * k * s**2 + (n * q + 4 * k * s) * q)


def f_l2(k, n, d, s):
    """``f(n_plus, L2(n_plus))`` in closed form."""
    if not 0 < k < n:
        raise ValueError("need 0 < n_plus < n")
    rad = _l2_radicand(k, n, s)
    if not rad > 0:
        raise ArithmeticError(f"radicand {rad} <= 0")
    num = n * (4 * d * k - 2 * n * k + 2 * k**2 + s) - k * (4 * d * k + 2 * s) + math.sqrt(rad)
    return num / (4 * k * (n - k))


def chain_f1(n, d, s) -> float:
    w = math.sqrt(n**8 + 6 * n**4 * s**2 - 3 * s**4)
    return n**8 * (d * n**4 - d * s**2 - n**5 / 2 - n * s**2 / 2 + n / 2 * w) / _den12(n, s)


def chain_f2(n, d, s) -> float:
    num = d * n**15 - d * n**11 * s**2 + n**12 * s**2 - 3 * n**8 * s**4 + 9 * n**4 * s**6 - 36 * s**8
    return num / (n**3 * _den12(n, s))


def chain_f3(n, d, s) -> float:
    return d + s**2 / n**3 - 2 * (d + n) * s**4 / n**8


def _den12(n, s):
    return n**12 - n**8 * s**2 + 2 * n**4 * s**4 - s**6


def chain_w(n, s) -> tuple[float, float]:
    """``(w, w1)``: the square root in ``f1`` and its polynomial lower estimate."""
    w = math.sqrt(n**8 + 6 * n**4 * s**2 - 3 * s**4)
    w1 = n**4 + 3 * s**2 - 6 * s**4 / n**4 + 18 * s**6 / n**8 - 72 * s**8 / n**12
    return w, w1


def n1_point(n, d, s):
    """Explicit stand-in ``N1`` for the crossing point, between ``N`` and ``p``."""
    return d / 2 + n / 4 - s / (4 * n)


def chain_z(n, d, s) -> tuple[float, float]:
    """``(z, z1)``: the square root of ``f_l2`` at ``N1`` and its estimate."""
    z = math.sqrt(_l2_radicand(n1_point(n, d, s), n, s))
    a, b = 3 * n - 2 * d, 2 * d + n
    z1 = (n * a * b / 8 + (1.5 * d - 0.75 * n) * s + 3 * s**2 / (8 * n)
          - 4 * (2 * d - n) * s**3 / (n**2 * a * b))
    return z, z1


def chain_g(n, d, s) -> float:
    """``f_l2(N1)`` with ``z`` replaced by ``z1``."""
    num = (-16 * d**5 * n**2 + 32 * d**4 * n**3 + 16 * d**4 * n * s + 8 * d**3 * n**4
           - 24 * d**3 * n**2 * s - 4 * d**3 * s**2 - 24 * d**2 * n**5 - 4 * d**2 * n**3 * s
           + 20 * d**2 * n * s**2 - 9 * d * n**6 + 6 * d * n**4 * s - 13 * d * n**2 * s**2
           + 32 * d * s**3 - 12 * n**3 * s**2 - 16 * n * s**3)
    den = (3 * n - 2 * d) * (2 * d + n) * (-2 * d * n - n**2 + s) * (-2 * d * n + 3 * n**2 + s)
    return num / den


def chain_g1(n, d, s) -> float:
    a, b = 3 * n - 2 * d, 2 * d + n
    return d + 4 * s**2 / (n * a * b) - 24 * (2 * d - n) * s**3 / (n**2 * a**2 * b**2)


def chain_r(n, d, s) -> tuple[float, float]:
    """``(r, r1)``: the conjectured gap and its rational upper estimate."""
    r = math.sqrt(2) * s**2 / (2 * n**2 * math.sqrt(d * n))
    r1 = s**2 * (12 * d**2 - 20 * d * n + 15 * n**2) / (8 * n**5)
    return r, r1


@dataclass(frozen=True)
class AppendixQuantities:
    n: float
    d: float
    s: float
    N: float
    N1: float
    t: float
    p1: float
    p2: float
    p: float
    s0: float
    s1: float
    h: float
    h1: float
    hypotheses: tuple[tuple[str, bool], ...]

    def L(self, k):
        return lower_l(k, self.n, self.d, self.s)

    def L2(self, k):
        return lower_l2(k, self.n, self.d, self.s)

    def f_l2(self, k):
        return f_l2(k, self.n, self.d, self.s)


def appendix_quantities(n, d, s) -> AppendixQuantities:
    if s <= 0:
        raise ValueError("needs s > 0")
    hyps = (("s > 0", s > 0), ("d > n/2", 2 * d > n), ("d <= 0.8n", 5 * d <= 4 * n))
    p1, p2 = cubic_bracket(n, s)
    h, h1 = havi2_bound(n, d)
    nf, df, sf = float(n), float(d), float(s)
    return AppendixQuantities(
        n=nf, d=df, s=sf,
        N=crossing_point(nf, df, sf),
        N1=n1_point(nf, df, sf),
        t=float(f2_threshold(n, d)),
        p1=float(p1), p2=float(p2), p=cubic_root(n, s),
        s0=appendix_s0(n, d) if 2 * d > n else math.nan,
        s1=appendix_s1(n, d),
        h=h, h1=h1,
        hypotheses=hyps,
    )
