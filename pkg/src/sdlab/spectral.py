"""Smoothing a graph into a three-weight complete graph, and spectral radii.

Vertices of above-average degree form the plus part, the rest (ties
included) the minus part. Each part, and the cross pairs, get one uniform
weight equal to their edge density, which preserves the edge count and the
degree deviation while never increasing the largest eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, degree_stats
from .linalg import jacobi_eigh

LAMBDA_TOL = 1e-9


def _comb2(k: int) -> int:
    return k * (k - 1) // 2


def _density(edges: int, pairs: int) -> Fraction:
    # empty pair sets carry no edges, so weight 0 keeps every formula valid
    return Fraction(edges, pairs) if pairs else Fraction(0)


@dataclass(frozen=True)
class SmoothedGraph:
    n_plus: int
    n_minus: int
    m_plus: int
    m_minus: int
    m_cross: int
    w_plus: Fraction
    w_minus: Fraction
    w_cross: Fraction
    plus_vertices: frozenset[int]

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def m(self) -> int:
        return self.m_plus + self.m_minus + self.m_cross

    @property
    def d(self) -> Fraction:
        return Fraction(2 * self.m, self.n)

    @property
    def d_plus(self) -> Fraction:
        """Common smoothed degree of the plus part."""
        return (self.n_plus - 1) * self.w_plus + self.n_minus * self.w_cross

    @property
    def d_minus(self) -> Fraction:
        return (self.n_minus - 1) * self.w_minus + self.n_plus * self.w_cross

    def total_weight(self) -> Fraction:
        return (_comb2(self.n_plus) * self.w_plus + _comb2(self.n_minus) * self.w_minus
                + self.n_plus * self.n_minus * self.w_cross)

    def weights(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.w_plus, self.w_minus, self.w_cross

    def matrix(self) -> np.ndarray:
        """The smoothed adjacency matrix, zero diagonal."""
        n = self.n
        plus = np.zeros(n, dtype=bool)
        plus[list(self.plus_vertices)] = True
        a = np.where(plus[:, None] & plus[None, :], float(self.w_plus),
                     np.where(~plus[:, None] & ~plus[None, :], float(self.w_minus),
                              float(self.w_cross)))
        np.fill_diagonal(a, 0.0)
        return a


def smooth(g: Graph) -> SmoothedGraph:
    degs = g.degrees()
    total = sum(degs)
    # deg(u) > d  <=>  n*deg(u) > 2m
    plus_mask = 0
    for u, k in enumerate(degs):
        if g.n * k > total:
            plus_mask |= 1 << u
    n_plus = plus_mask.bit_count()
    n_minus = g.n - n_plus
    inside_plus = sum((g.rows[u] & plus_mask).bit_count() for u in range(g.n) if plus_mask >> u & 1)
    inside_minus = sum((g.rows[u] & ~plus_mask).bit_count() for u in range(g.n) if not plus_mask >> u & 1)
    m_plus, m_minus = inside_plus // 2, inside_minus // 2
    m_cross = total // 2 - m_plus - m_minus
    return SmoothedGraph(
        n_plus, n_minus, m_plus, m_minus, m_cross,
        _density(m_plus, _comb2(n_plus)),
        _density(m_minus, _comb2(n_minus)),
        _density(m_cross, n_plus * n_minus),
        frozenset(u for u in range(g.n) if plus_mask >> u & 1),
    )


def smoothed_deviation(sg: SmoothedGraph, d: Fraction | None = None) -> Fraction:
    """Deviation of the smoothed graph from its closed form.

    Also cross-checks the second closed form ``2(m+ - m-) - d(n+ - n-)``.
    """
    d = sg.d if d is None else Fraction(d)
    value = (sg.n_plus * (sg.w_plus * (sg.n_plus - 1) - d)
             + sg.n_minus * (d - sg.w_minus * (sg.n_minus - 1)))
    alt = 2 * (sg.m_plus - sg.m_minus) - d * (sg.n_plus - sg.n_minus)
    if value != alt:
        raise ArithmeticError(f"closed forms disagree: {value} != {alt}")
    return value


def smoothed_deviation_direct(sg: SmoothedGraph) -> Fraction:
    """Sum over vertices of |smoothed degree - d|, straight from the definition."""
    d = Fraction(2 * sg.total_weight(), sg.n)
    return sg.n_plus * abs(sg.d_plus - d) + sg.n_minus * abs(sg.d_minus - d)


def lambda_tilde_closed_form(sg: SmoothedGraph) -> float:
    if sg.n_plus == 0 or sg.n_minus == 0:
        raise ValueError("closed form needs both parts nonempty; use lambda_tilde(g)")
    a = (sg.n_plus - 1) * sg.w_plus
    b = (sg.n_minus - 1) * sg.w_minus
    disc = (a - b) ** 2 + 4 * sg.n_plus * sg.n_minus * sg.w_cross ** 2
    return 0.5 * (float(a + b) + _sqrt(disc))


def _sqrt(x: Fraction) -> float:
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return rn / rd
    return math.sqrt(num / den)


def lambda_tilde(g: Graph) -> float:
    """Largest eigenvalue of the smoothed matrix; ``d`` for regular graphs."""
    sg = smooth(g)
    if sg.n_plus == 0:
        return float(sg.d)
    return lambda_tilde_closed_form(sg)


def lambda_max(g: Graph) -> float:
    if g.m == 0:
        return 0.0
    return jacobi_eigh(g.adjacency_matrix()).largest


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    lam_tilde: float
    lam_tilde_jacobi: float
    residual: float

    def chain_holds(self, d: float, tol: float = LAMBDA_TOL) -> bool:
        return self.lam >= self.lam_tilde - tol and self.lam_tilde >= d - tol


def spectral_result(g: Graph) -> SpectralResult:
    a = g.adjacency_matrix()
    eig = jacobi_eigh(a)
    sg = smooth(g)
    tilde = jacobi_eigh(sg.matrix())
    return SpectralResult(eig.largest, lambda_tilde(g), tilde.largest, eig.residual(a))


def check_lemma1(g: Graph) -> dict[str, bool]:
    """Exact invariance identities of the smoothing, keyed by name."""
    st = degree_stats(g)
    sg = smooth(g)
    out = {
        "total_weight": sg.total_weight() == st.m,
        "deviation": smoothed_deviation(sg, st.d) == st.s == smoothed_deviation_direct(sg),
    }
    ok_plus = sg.n_plus == 0 or st.d < sg.d_plus <= st.delta_max
    ok_minus = sg.n_minus == 0 or st.delta_min <= sg.d_minus <= st.d
    out["degree_ranges"] = ok_plus and ok_minus
    out["weights_in_unit"] = all(0 <= w <= 1 for w in sg.weights())
    return out
