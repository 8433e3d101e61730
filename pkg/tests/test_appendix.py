from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from sdlab.bounds import havi2_bound
from sdlab.optimize.appendix import (appendix_quantities, chain_f1, chain_f2, chain_f3, chain_g,
                                     chain_g1, chain_r, chain_w, chain_z, cubic, cubic_bracket,
                                     cubic_identities, cubic_root, f_l2, n1_point)
from sdlab.optimize.q import crossing_point, f_of, lower_l, lower_l2


@st.composite
def large_degree(draw, f2_range: bool = False):
    """(n, d, s) with d > n/2 and 0 < s < 0.35 n^2 (optionally the F2 window)."""
    n = draw(st.floats(4, 80))
    hi = 0.8 * n if f2_range else n - 1
    d = draw(st.floats(0.5 * n, hi, exclude_min=True))
    lo = 0.7 * n * (d - n / 2) if f2_range else 0.0
    s = lo + draw(st.floats(0.001, 1)) * (0.35 * n * n - lo)
    assume(0 < s < 0.35 * n * n and d < n - 1 and 2 * d > n)
    return n, d, s


def test_reference_point():
    q = appendix_quantities(10, 6, 20)
    assert (q.p1, q.p2, q.t, q.h) == (5.96, 6.0, 7.0, 24.0)
    assert q.p1 < q.p < q.p2
    assert q.N1 == 5.0
    assert q.L(q.N) == pytest.approx(q.L2(q.N), abs=1e-10)
    assert all(ok for _, ok in q.hypotheses)
    assert cubic(6, 10, 20) == 8 == Fraction(20**3, 10**3)


def test_reference_chain():
    n, d, s = 10, 6, 20
    fp = f_l2(cubic_root(n, s), n, d, s)
    f1, f2, f3 = chain_f1(n, d, s), chain_f2(n, d, s), chain_f3(n, d, s)
    assert fp >= f1 >= f2 >= f3
    assert f3 == pytest.approx(6.3488, abs=1e-12)


def test_needs_positive_deviation():
    with pytest.raises(ValueError):
        appendix_quantities(10, 6, 0)


@given(st.integers(2, 200), st.fractions(Fraction(1, 100), 1, max_denominator=100))
def test_cubic_identities_exact(n, frac):
    s = frac * Fraction(7, 20) * n * n
    assert cubic_identities(n, s) == (True, True)
    p1, p2 = cubic_bracket(Fraction(n), s)
    assert cubic(p1, n, s) < 0 < cubic(p2, n, s)


@given(large_degree())
def test_root_in_bracket(p):
    n, _, s = p
    p1, p2 = cubic_bracket(n, s)
    root = cubic_root(n, s)
    assert p1 < root < p2 or p1 <= root <= p2
    assert abs(cubic(root, n, s)) <= 1e-10 * n**3


@given(large_degree(), st.floats(0.01, 0.99))
def test_closed_form_along_l2(p, u):
    n, d, s = p
    k = u * n
    ref = f_of(k, lower_l2(k, n, d, s), n, d, s).f
    assert f_l2(k, n, d, s) == pytest.approx(ref, rel=1e-10, abs=1e-10)


@given(large_degree())
def test_root_minimises_along_l2(p):
    n, d, s = p
    best = f_l2(cubic_root(n, s), n, d, s)
    ks = np.linspace(1e-3, n - 1e-3, 801)
    vals = np.array([f_l2(k, n, d, s) for k in ks])
    assert vals.min() >= best - 1e-9 * n


@given(large_degree())
def test_estimate_chain(p):
    n, d, s = p
    tol = 1e-9 * n
    fp = f_l2(cubic_root(n, s), n, d, s)
    f1, f2, f3 = chain_f1(n, d, s), chain_f2(n, d, s), chain_f3(n, d, s)
    assert fp >= f1 - tol and f1 >= f2 - tol and f2 >= f3 - tol
    w, w1 = chain_w(n, s)
    assert w >= w1 - 1e-9 * w
    r, r1 = chain_r(n, d, s)
    assert r1 >= r * (1 - 1e-12)  # equal at d = n/2


@given(large_degree(f2_range=True))
def test_second_chain(p):
    n, d, s = p
    tol = 1e-9 * n
    z, z1 = chain_z(n, d, s)
    assert z >= z1 - 1e-9 * z
    g, g1 = chain_g(n, d, s), chain_g1(n, d, s)
    assert f_l2(n1_point(n, d, s), n, d, s) >= g - tol
    assert g >= g1 - tol


@given(st.floats(4, 80), st.floats(0.5, 0.8, exclude_min=True))
def test_points_ordered_at_threshold(n, x):
    d = x * n
    t = 0.7 * n * (d - n / 2)
    assume(t > 0)
    p1, _ = cubic_bracket(n, t)
    assert crossing_point(n, d, t) <= n1_point(n, d, t) + 1e-12 <= p1 + 2e-12


def test_crossing_below_diagonal_iff_below_h():
    # scan s across h on a grid; both directions of the equivalence occur
    seen = set()
    for n in (8, 12, 20, 33):
        for d in np.linspace(0.55 * n, n - 1.5, 7):
            h, _ = havi2_bound(n, d)
            for s in np.concatenate([h * np.linspace(0.2, 0.999, 9), h * np.linspace(1.001, 1.8, 9)]):
                if s <= 0 or d * d - 2 * d * n + n * n + 2 * s < 0:
                    continue
                big_n = crossing_point(n, d, s)
                lhs = lower_l(big_n, n, d, s) <= big_n - 1
                assert lhs == (s <= h)
                seen.add(lhs)
    assert seen == {True, False}


def test_figure_curves_ordered():
    for x in np.linspace(0.5, 0.8, 1001)[1:]:
        q = appendix_quantities(1000, 1000 * x, 1.0)
        assert q.h1 < q.s1
