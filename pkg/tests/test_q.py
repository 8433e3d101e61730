from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from sdlab.bounds import havi2_bound
from sdlab.optimize.q import (ContractViolation, critical_point_residual, crossing_point, derivative,
                              f_radicand,
                              f_direct, f_of, f_on_l, f_value, lower_l, lower_l2, minimize_q,
                              q_critical_point, theorem3_gap)


@st.composite
def params(draw):
    """(n, d, s) with 0 < d < n - 1 and 0 < s < min(1.4 dn, 2d(n - d))."""
    n = draw(st.floats(3, 60))
    d = draw(st.floats(0.2, 1)) * (n - 1)
    s = draw(st.floats(0.001, 0.999)) * min(1.4 * d * n, 2 * d * (n - d))
    return n, d, s


@st.composite
def feasible_points(draw):
    n, d, s = draw(params())
    k = draw(st.floats(0.01, 0.99)) * n
    lo = max(0.0, lower_l(k, n, d, s))
    assume(lo <= k)
    x = lo + draw(st.floats(0, 1)) * (k - lo)
    return n, d, s, k, x


def test_star_parameters_boundary_point():
    pt = f_of(1, 0, 4, 1.5, 3)
    assert pt.f == pytest.approx(math.sqrt(3), abs=1e-14)
    assert pt.x_minus == pytest.approx(0.0, abs=1e-14) and pt.w_cross == pytest.approx(1.0)


def test_equal_split_value():
    # s = dn with x+ = 2d = L(n/2): f = 2d = 2s/n
    n, d = 10.0, 3.0
    s = d * n
    assert lower_l(n / 2, n, d, s) == pytest.approx(2 * d)
    assert f_of(n / 2, 2 * d, n, d, s).f == pytest.approx(2 * s / n, abs=1e-12)


def test_blows_up_towards_full_plus_part():
    vals = [float(f_on_l(10 - eps, 10, 4, 12)) for eps in (1e-1, 1e-3, 1e-5)]
    assert vals[0] < vals[1] < vals[2] and vals[2] > 100


def test_domain_guard():
    with pytest.raises(ValueError):
        f_of(4, 0, 4, 1.5, 3)
    assert issubclass(ContractViolation, ArithmeticError)


@given(params(), st.floats(0.001, 0.999), st.floats(-100, 100))
def test_radicand_positive_everywhere(p, u, x):
    # -y(yn + 2s) n+ is at most s^2 n+/n < s^2
    n, d, s = p
    assert f_radicand(u * n, x, n, d, s) > 0


@given(feasible_points())
def test_closed_form_matches_block_eigenvalue(p):
    n, d, s, k, x = p
    pt = f_of(k, x, n, d, s)
    assert pt.f == pytest.approx(f_direct(k, x, pt.x_minus, pt.w_cross, n), rel=1e-9, abs=1e-9)
    # the eliminated variables reproduce the constraints
    assert x * k + pt.x_minus * (n - k) + 0 == pytest.approx(
        d * n - 2 * k * (n - k) * pt.w_cross, rel=1e-9, abs=1e-7)


@given(feasible_points())
def test_increasing_in_internal_degree(p):
    n, d, s, k, x = p
    lo = max(0.0, lower_l(k, n, d, s))
    h = 1e-6 * max(1.0, k)
    a, b = max(lo, x - h), min(k, x + h)
    assume(b > a)
    assert (f_value(k, b, n, d, s) - f_value(k, a, n, d, s)) / (b - a) >= -1e-8


@given(params(), st.floats(0.01, 0.99))
def test_decreasing_in_part_size_at_zero(p, u):
    n, d, s = p
    k = u * n
    h = 1e-4 * min(k, n - k)
    assert derivative(lambda t: f_value(t, 0.0, n, d, s), k, h) <= 1e-8


def test_critical_point_examples():
    assert q_critical_point(10, 6, 20) == 15
    assert critical_point_residual(10, 6, 20) is None
    with pytest.raises(ZeroDivisionError):
        q_critical_point(10, 6, 30)


@given(st.floats(0.5, 20), st.floats(2, 80))
def test_critical_point_meets_boundary_at_split(d, n):
    s = d * n / math.sqrt(2)
    assert q_critical_point(n, d, s) == pytest.approx((d * n - s) / (2 * d), rel=1e-9)


def test_critical_point_above_dn():
    n, d, s = 10.0, 1.0, 15.0
    c = q_critical_point(n, d, s)
    assert c == 6.25
    assert abs(critical_point_residual(n, d, s)) <= 1e-6
    assert float(f_on_l(c, n, d, s)) == pytest.approx(2 * s / n, abs=1e-12)


def test_minimize_star_parameters():
    best, pt = minimize_q(4, 1.5, 3)
    assert best == pytest.approx(math.sqrt(3), abs=1e-7)
    assert pt.n_plus == pytest.approx(1, abs=1e-4) and pt.x_plus == pytest.approx(0, abs=1e-6)


def test_minimize_above_dn():
    best, pt = minimize_q(10, 1, 15)
    assert best == pytest.approx(3.0, abs=1e-7)
    assert pt.n_plus == pytest.approx(6.25, abs=1e-3)


def test_minimize_small_deviation():
    best, _ = minimize_q(10, 4, 1e-4)
    assert best == pytest.approx(4.0, abs=1e-6)


def test_minimize_validates():
    with pytest.raises(ValueError):
        minimize_q(10, 4, 0)
    with pytest.raises(ValueError):
        minimize_q(10, 4, 5, grid=32)


@settings(max_examples=25)
@given(params())
def test_minimum_not_below_closed_form(p):
    assert theorem3_gap(*p, grid=128) >= -1e-7


@settings(max_examples=25)
@given(params())
def test_extra_face_only_raises_minimum(p):
    n, d, s = p
    # above h the w_cross <= 1 face leaves no feasible point
    assume(2 * d > n and s < havi2_bound(n, d)[0])
    base, _ = minimize_q(n, d, s, grid=128)
    with_face, pt = minimize_q(n, d, s, grid=128, with_l2=True)
    assert with_face >= base - 1e-7
    assert pt.w_cross <= 1 + 1e-9


def test_crossing_point():
    n, d, s = 10.0, 6.0, 20.0
    big_n = crossing_point(n, d, s)
    assert lower_l(big_n, n, d, s) == pytest.approx(lower_l2(big_n, n, d, s), abs=1e-10)
    ks = np.linspace(0.5, big_n - 1e-6, 50)
    assert np.all(lower_l2(ks, n, d, s) >= lower_l(ks, n, d, s) - 1e-12)
