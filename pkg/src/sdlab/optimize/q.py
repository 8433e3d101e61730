"""Lower bound on the smoothed spectral radius as a two-variable minimisation.

After eliminating ``n_minus``, ``x_minus`` and ``w_cross`` with the three
equality constraints, the largest eigenvalue of the smoothed matrix is a
function ``f(n_plus, x_plus)`` of the plus-part size and its internal
degree ``x_plus = (n_plus - 1) * w_plus``. Its minimum over the relaxed
feasible region lower-bounds lambda for every graph with parameters
``(n, d, s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..bounds import theorem3_bound


class ContractViolation(ArithmeticError):
    """A quantity proved positive (or zero) came out otherwise."""


def lower_l(n_plus, n, d, s):
    """``x_minus >= 0`` rewritten as a lower bound on ``x_plus``."""
    return 2 * d - (d * n - s) / n_plus


def lower_l2(n_plus, n, d, s):
    """``w_cross <= 1`` rewritten as a lower bound on ``x_plus``."""
    return d - n + n_plus + s / (2 * n_plus)


def crossing_point(n, d, s) -> float:
    """Size ``N`` of the plus part where the two lower bounds meet (L2 >= L below it)."""
    return d / 2 + n / 2 - math.sqrt(d * d - 2 * d * n + n * n + 2 * s) / 2


def f_radicand(n_plus, x_plus, n, d, s):
    y = d - x_plus
    return n / n_plus * (y * (y * n + 2 * s) * n_plus + s * s)


def f_value(n_plus, x_plus, n, d, s):
    """``f(n_plus, x_plus)``; works elementwise on numpy arrays."""
    root = np.sqrt(f_radicand(n_plus, x_plus, n, d, s))
    return (root + (d + x_plus) * n - 2 * d * n_plus - s) / (2 * (n - n_plus))


def f_direct(n_plus, x_plus, x_minus, w_cross, n):
    """Largest eigenvalue of the two-block matrix before elimination."""
    n_minus = n - n_plus
    return 0.5 * (x_plus + x_minus
                  + math.sqrt((x_plus - x_minus) ** 2 + 4 * n_plus * n_minus * w_cross ** 2))


@dataclass(frozen=True)
class QPoint:
    n_plus: float
    x_plus: float
    x_minus: float
    w_cross: float
    f: float


def f_of(n_plus: float, x_plus: float, n: float, d: float, s: float) -> QPoint:
    if not 0 < n_plus < n:
        raise ValueError("need 0 < n_plus < n")
    rad = f_radicand(n_plus, x_plus, n, d, s)
    if not rad > 0:
        raise ContractViolation(f"radicand {rad} <= 0 at n_plus={n_plus}, x_plus={x_plus}")
    x_minus = (d * n + (x_plus - 2 * d) * n_plus - s) / (n - n_plus)
    w_cross = (2 * (d - x_plus) * n_plus + s) / (2 * n_plus * (n - n_plus))
    return QPoint(float(n_plus), float(x_plus), float(x_minus), float(w_cross),
                  float(f_value(n_plus, x_plus, n, d, s)))


def f_on_l(n_plus, n, d, s):
    """``f`` restricted to the curve ``x_plus = L(n_plus)``."""
    return f_value(n_plus, lower_l(n_plus, n, d, s), n, d, s)


def q_critical_point(n: float, d: float, s: float) -> float:
    """Only possible stationary point of ``f`` along ``x_plus = L(n_plus)``."""
    den = 2 * (d * n - 2 * s)
    if den == 0:
        raise ZeroDivisionError("critical point undefined for s = dn/2")
    return (2 * d * n - 3 * s) * n / den


def derivative(fn, x: float, h: float) -> float:
    """Five-point central difference."""
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h)


def critical_point_residual(n: float, d: float, s: float) -> float | None:
    """``d/dn_plus f(n_plus, L(n_plus))`` at the critical point; None unless interior."""
    c = q_critical_point(n, d, s)
    if not 0 < c < n:
        return None
    h = 1e-3 * min(c, n - c)
    return derivative(lambda k: f_on_l(k, n, d, s), c, h)


# minimisation -------------------------------------------------------------------


def _bounds_x(n_plus, n, d, s, with_l2):
    lo = np.maximum(0.0, lower_l(n_plus, n, d, s))
    if with_l2:
        lo = np.maximum(lo, lower_l2(n_plus, n, d, s))
    return lo, n_plus


def _evaluate(u, t, n, d, s, with_l2):
    """f at unit-square coordinates; +inf where the x-range is empty."""
    u = np.asarray(u, dtype=float)
    t = np.asarray(t, dtype=float)
    k = u * n
    lo, hi = _bounds_x(k, n, d, s, with_l2)
    x = lo + t * (hi - lo)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = f_value(k, x, n, d, s)
    return np.where((lo <= hi) & (k > 0) & (k < n), val, np.inf)


def minimize_q(n: float, d: float, s: float, grid: int = 512, with_l2: bool = False,
               rounds: int = 3, step_tol: float = 1e-10) -> tuple[float, QPoint]:
    """Minimise ``f`` over the relaxed region by grid scan plus local refinement.

    The region is ``0 < n_plus < n`` and ``max(0, L) <= x_plus <= n_plus``;
    ``with_l2`` also imposes ``x_plus >= L2`` (the ``w_cross <= 1`` face).
    Every returned value is ``f`` at a feasible point, so it can only
    overestimate the true infimum.
    """
    if s <= 0:
        raise ValueError("needs s > 0")
    if grid < 64:
        raise ValueError("grid resolution must be >= 64")
    n, d, s = float(n), float(d), float(s)
    us = np.arange(1, grid + 1) / (grid + 1)
    ts = np.linspace(0.0, 1.0, grid)
    vals = _evaluate(us[:, None], ts[None, :], n, d, s, with_l2)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    if not np.isfinite(vals[i, j]):
        raise ValueError("empty feasible region on the grid")
    u0, t0, best = us[i], ts[j], vals[i, j]
    du, dt = us[1] - us[0], ts[1] - ts[0]
    eps = 1e-15
    for _ in range(rounds):
        u_loc = np.clip(np.linspace(u0 - 2 * du, u0 + 2 * du, 41), eps, 1 - eps)
        t_loc = np.clip(np.linspace(t0 - 2 * dt, t0 + 2 * dt, 41), 0.0, 1.0)
        loc = _evaluate(u_loc[:, None], t_loc[None, :], n, d, s, with_l2)
        a, b = np.unravel_index(np.argmin(loc), loc.shape)
        if loc[a, b] <= best:
            u0, t0, best = u_loc[a], t_loc[b], loc[a, b]
        du, dt = du / 10, dt / 10
    # coordinate descent with step halving
    step_u, step_t = du, max(dt, step_tol)
    while step_u > step_tol or step_t > step_tol:
        moved = False
        for cu, ct in ((step_u, 0.0), (-step_u, 0.0), (0.0, step_t), (0.0, -step_t)):
            u1 = min(max(u0 + cu, eps), 1 - eps)
            t1 = min(max(t0 + ct, 0.0), 1.0)
            v = float(_evaluate(u1, t1, n, d, s, with_l2))
            if v < best:
                u0, t0, best, moved = u1, t1, v, True
                break
        if not moved:
            step_u /= 2
            step_t /= 2
    k = u0 * n
    lo, hi = _bounds_x(k, n, d, s, with_l2)
    point = f_of(k, float(lo + t0 * (hi - lo)), n, d, s)
    return point.f, point


def theorem3_gap(n: float, d: float, s: float, **kw) -> float:
    """``min f - theorem3_bound``; nonnegative up to refinement error."""
    best, _ = minimize_q(n, d, s, **kw)
    return best - theorem3_bound(n, d, s).value
