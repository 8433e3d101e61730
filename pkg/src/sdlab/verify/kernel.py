"""Compiled per-graph checks for exhaustive sweeps.

Mirrors ``sdlab.verify.checks.check_graph`` on adjacency bit rows: the
deviation identities and the upper bounds on ``s`` are decided in exact
integer arithmetic (everything scaled by ``n``), eigenvalues come from the
same Jacobi routine as the library. ``tests/test_kernel.py`` pins the two
routes to each other.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from ..linalg import JACOBI_MAX_SWEEPS, JACOBI_TOL, jacobi_largest

CHECKS = (
    "lemma1_weight", "lemma1_deviation", "lemma1_degrees",
    "lemma2_upper", "lemma2_lower", "lemma2_closed_form",
    "haviland", "ali", "theorem1", "theorem2",
    "theorem3", "theorem3_lambda",
    "nikiforov6_lower", "corollary1", "corollary1_tilde",
    "f1", "f2", "niki",
    "upper_sqrt", "upper_zhang", "upper_rw23",
)
K = len(CHECKS)
IDX = {name: i for i, name in enumerate(CHECKS)}

APPLICABLE = 1
HOLDS = 2
EQUALITY = 4
COMPUTABLE = 8

FLOAT_TOL = 1e-9

(C_L1W, C_L1D, C_L1R, C_L2U, C_L2L, C_L2C, C_HAV, C_ALI, C_T1, C_T2, C_T3, C_T3L,
 C_N6, C_COR, C_CORT, C_F1, C_F2, C_NIKI, C_USQ, C_UZH, C_URW) = range(K)


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _rat(num, den):
    if den < 0:
        num, den = -num, -den
    g = _gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return num, den


@njit(cache=True)
def _radd(a, b, c, d):
    return _rat(a * d + c * b, b * d)


@njit(cache=True)
def _rsub(a, b, c, d):
    return _rat(a * d - c * b, b * d)


@njit(cache=True)
def _rmul(a, b, c, d):
    return _rat(a * c, b * d)


@njit(cache=True)
def _rcmp(a, b, c, d):
    lhs = a * d
    rhs = c * b
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0


@njit(cache=True)
def _le_surd(q, a, b, c):
    """Exact test ``q <= a - b*sqrt(c)`` for integers with b, c >= 0.

    Returns (holds, equal).
    """
    r = a - q
    if b == 0 or c == 0:
        return r >= 0, r == 0
    if r < 0:
        return False, False
    lhs = b * b * c
    rr = r * r
    return lhs <= rr, lhs == rr


@njit(cache=True)
def _set(slack, flags, g, k, value, applicable, holds, equal, computable):
    slack[g, k] = value
    f = 0
    if applicable:
        f |= APPLICABLE
    if holds:
        f |= HOLDS
    if equal:
        f |= EQUALITY
    if computable:
        f |= COMPUTABLE
    flags[g, k] = f


@njit(cache=True)
def _float_lower(slack, flags, g, k, quantity, bound, applicable, computable):
    """Record ``quantity >= bound`` (tolerance FLOAT_TOL)."""
    if not computable:
        _set(slack, flags, g, k, np.nan, applicable, False, False, False)
        return
    sl = quantity - bound
    _set(slack, flags, g, k, sl, applicable, sl >= -FLOAT_TOL, abs(sl) <= FLOAT_TOL, True)


@njit(cache=True)
def check_one(n, row, slack, flags, g, a, at):
    """Run every check on one graph; ``a``/``at`` are n x n scratch matrices."""
    deg = np.empty(n, dtype=np.int64)
    total = 0
    dmin = n
    dmax = 0
    for u in range(n):
        k = _popcount(row[u])
        deg[u] = k
        total += k
        dmin = min(dmin, k)
        dmax = max(dmax, k)
    m = total // 2
    # S = n*s, T = n*d = 2m
    T = total
    S = 0
    plus_mask = 0
    for u in range(n):
        S += abs(n * deg[u] - T)
        if n * deg[u] > T:
            plus_mask |= 1 << u
    npl = _popcount(plus_mask)
    nmi = n - npl
    twice_mp = 0
    twice_mm = 0
    for u in range(n):
        if plus_mask >> u & 1:
            twice_mp += _popcount(row[u] & plus_mask)
        else:
            twice_mm += _popcount(row[u] & ~plus_mask)
    mp = twice_mp // 2
    mm = twice_mm // 2
    mc = m - mp - mm
    cp = npl * (npl - 1) // 2
    cm = nmi * (nmi - 1) // 2
    cc = npl * nmi
    wp_n, wp_d = (mp, cp) if cp > 0 else (0, 1)
    wm_n, wm_d = (mm, cm) if cm > 0 else (0, 1)
    wc_n, wc_d = (mc, cc) if cc > 0 else (0, 1)
    wp_n, wp_d = _rat(wp_n, wp_d)
    wm_n, wm_d = _rat(wm_n, wm_d)
    wc_n, wc_d = _rat(wc_n, wc_d)
    d_n, d_d = _rat(T, n)

    # smoothing identities ------------------------------------------------------
    tw = _rmul(cp, 1, wp_n, wp_d)
    tw = _radd(tw[0], tw[1], *_rmul(cm, 1, wm_n, wm_d))
    tw = _radd(tw[0], tw[1], *_rmul(cc, 1, wc_n, wc_d))
    ok = _rcmp(tw[0], tw[1], m, 1) == 0
    _set(slack, flags, g, C_L1W, 0.0 if ok else -abs(tw[0] / tw[1] - m), True, ok, ok, True)

    # n+ (w+ (n+ - 1) - d) + n- (d - w- (n- - 1))
    x = _rsub(*_rmul(wp_n, wp_d, npl - 1, 1), d_n, d_d)
    x = _rmul(x[0], x[1], npl, 1)
    y = _rsub(d_n, d_d, *_rmul(wm_n, wm_d, nmi - 1, 1))
    y = _rmul(y[0], y[1], nmi, 1)
    form1 = _radd(x[0], x[1], y[0], y[1])
    # 2(m+ - m-) - d (n+ - n-)
    form2 = _rsub(2 * (mp - mm), 1, *_rmul(d_n, d_d, npl - nmi, 1))
    # n+ |d+ - d| + n- |d- - d| from smoothed degrees
    dp = _radd(*_rmul(wp_n, wp_d, npl - 1, 1), *_rmul(wc_n, wc_d, nmi, 1))
    dm = _radd(*_rmul(wm_n, wm_d, nmi - 1, 1), *_rmul(wc_n, wc_d, npl, 1))
    ep = _rsub(dp[0], dp[1], d_n, d_d)
    em = _rsub(dm[0], dm[1], d_n, d_d)
    direct = _radd(npl * abs(ep[0]), ep[1], nmi * abs(em[0]), em[1])
    s_n, s_d = _rat(S, n)
    ok = (_rcmp(form1[0], form1[1], s_n, s_d) == 0 and _rcmp(form2[0], form2[1], s_n, s_d) == 0
          and _rcmp(direct[0], direct[1], s_n, s_d) == 0)
    _set(slack, flags, g, C_L1D, 0.0 if ok else -abs(form1[0] / form1[1] - S / n), True, ok, ok, True)

    ok = True
    if npl > 0:
        ok = ok and _rcmp(d_n, d_d, dp[0], dp[1]) < 0 and _rcmp(dp[0], dp[1], dmax, 1) <= 0
    if nmi > 0:
        ok = ok and _rcmp(dmin, 1, dm[0], dm[1]) <= 0 and _rcmp(dm[0], dm[1], d_n, d_d) <= 0
    for wn, wd in ((wp_n, wp_d), (wm_n, wm_d), (wc_n, wc_d)):
        ok = ok and wn >= 0 and wn <= wd
    _set(slack, flags, g, C_L1R, 0.0 if ok else -1.0, True, ok, ok, True)

    # spectra --------------------------------------------------------------------
    wp = wp_n / wp_d
    wm = wm_n / wm_d
    wc = wc_n / wc_d
    for u in range(n):
        for v in range(n):
            a[u, v] = 1.0 if row[u] >> v & 1 else 0.0
            if u == v:
                at[u, v] = 0.0
            else:
                pu = plus_mask >> u & 1
                pv = plus_mask >> v & 1
                if pu and pv:
                    at[u, v] = wp
                elif pu or pv:
                    at[u, v] = wc
                else:
                    at[u, v] = wm
    lam = jacobi_largest(a, JACOBI_TOL, JACOBI_MAX_SWEEPS) if m > 0 else 0.0
    lam_tj = jacobi_largest(at, JACOBI_TOL, JACOBI_MAX_SWEEPS) if m > 0 else 0.0
    d = T / n
    s = S / n
    if npl == 0:
        lam_t = d
    else:
        p = (npl - 1) * wp
        q = (nmi - 1) * wm
        lam_t = 0.5 * (p + q + math.sqrt((p - q) ** 2 + 4.0 * npl * nmi * wc * wc))
    _float_lower(slack, flags, g, C_L2U, lam, lam_t, True, True)
    _float_lower(slack, flags, g, C_L2L, lam_t, d, True, True)
    diff = abs(lam_t - lam_tj)
    _set(slack, flags, g, C_L2C, -diff, True, diff <= FLOAT_TOL, False, True)

    # upper bounds on s (exact) ----------------------------------------------------
    a_psi = min(T, n * (n - 1) - T)   # n * psi
    hv = (a_psi / n) * (2 * n - 1 - math.sqrt(4 * a_psi + 1))
    holds, eq = _le_surd(S, a_psi * (2 * n - 1), a_psi, 4 * a_psi + 1)
    _set(slack, flags, g, C_HAV, hv - s, True, holds, eq, True)

    app = dmin >= 1 and n * dmin < T and T < n * dmax
    if dmin >= 1:
        lhs = S * S * dmin * dmax
        rhs = T * T * (n * dmax - T) * (T - n * dmin)
        bound = T * math.sqrt((n * dmax - T) * (T - n * dmin) / (n * n * dmin * dmax))
        _set(slack, flags, g, C_ALI, bound - s, app, lhs <= rhs, lhs == rhs, True)
    else:
        _set(slack, flags, g, C_ALI, np.nan, app, False, False, False)

    app = n * dmin < T and T < n * dmax
    if dmax > dmin:
        lhs = S * (dmax - dmin)
        rhs = 2 * (n * dmax - T) * (T - n * dmin)
        _set(slack, flags, g, C_T1, rhs / (n * (dmax - dmin)) - s, app, lhs <= rhs, lhs == rhs, True)
    else:
        _set(slack, flags, g, C_T1, np.nan, app, False, False, False)

    hi = dmax
    app = (T > 0 and T < n * hi and hi < n and T <= n * (n - 3)
           and 2 * hi <= T and T < hi * (hi + 1))
    disc = (2 * hi + 1) ** 2 - 4 * T
    # n * second term: T(2n-1) - T sqrt(4T+1)
    hb, eb = _le_surd(S, T * (2 * n - 1), T, 4 * T + 1)
    vb = d * (2 * n - 1 - math.sqrt(4 * T + 1))
    if disc >= 0:
        # n * first term: (2hi+1)(n hi - T) - (n hi - T) sqrt(disc)
        ha, ea = _le_surd(S, (2 * hi + 1) * (n * hi - T), n * hi - T, disc)
        va = (2 * hi + 1 - math.sqrt(disc)) * (hi - d)
        holds = ha or hb
        # equal to the max: equal to one term and not below the other
        eq = (ea and (eb or not hb)) or (eb and (ea or not ha))
        value = max(va, vb)
    else:
        holds, eq, value = hb, eb, vb
    _set(slack, flags, g, C_T2, value - s, app, holds, eq, True)

    # lower bounds on the spectral radius ---------------------------------------------
    pos = S > 0
    if pos:
        c2 = 2 * S * S - T * T * n * n      # sign of s - dn/sqrt(2)
        second = 2.0 * s / n
        if c2 > 0:
            t3 = second
        else:
            first = d * d * n / math.sqrt(d * d * n * n - s * s)
            t3 = max(first, second) if c2 == 0 else first
        _float_lower(slack, flags, g, C_T3, lam_t, t3, True, True)
        _float_lower(slack, flags, g, C_T3L, lam, t3, True, True)
    else:
        c2 = -1
        _float_lower(slack, flags, g, C_T3, lam_t, d, False, True)
        _float_lower(slack, flags, g, C_T3L, lam, d, False, True)

    if m >= 1:
        _float_lower(slack, flags, g, C_N6, lam - d, s * s / (2.0 * n * n * math.sqrt(2.0 * m)), True, True)
        gap = s * s / (n * n * math.sqrt(2.0 * d * n))
        app = pos and (c2 > 0 or 2 * T <= n * n)
        _float_lower(slack, flags, g, C_COR, lam - d, gap, app, True)
        _float_lower(slack, flags, g, C_CORT, lam_t - d, gap, app, True)
        _float_lower(slack, flags, g, C_NIKI, lam, d + gap, pos, True)
    else:
        for k in (C_N6, C_COR, C_CORT, C_NIKI):
            _float_lower(slack, flags, g, k, 0.0, 0.0, False, False)

    big = 2 * T > n * n
    f1 = d + s * s / n**3 - 2.0 * (d + n) * s**4 / n**8
    _float_lower(slack, flags, g, C_F1, lam, f1, pos and big, True)
    ca = 3.0 * n - 2.0 * d
    cb = 2.0 * d + n
    f2 = d + 4.0 * s * s / (n * ca * cb) - 24.0 * (2.0 * d - n) * s**3 / (n * n * ca * ca * cb * cb)
    app = pos and big and 5 * T <= 4 * n * n and 20 * S >= 7 * n * (2 * T - n * n)
    _float_lower(slack, flags, g, C_F2, lam, f2, app, True)

    _float_lower(slack, flags, g, C_USQ, math.sqrt(s), lam - d, True, True)
    _float_lower(slack, flags, g, C_UZH, math.sqrt(0.9 * s), lam - d, True, True)
    _float_lower(slack, flags, g, C_URW, math.sqrt(2.0 * s / 3.0), lam - d, True, True)


@njit(cache=True, parallel=True)
def check_rows(n, rows):
    """Checks for a batch of graphs given as bit rows (shape B x n)."""
    b = rows.shape[0]
    slack = np.empty((b, K), dtype=np.float64)
    flags = np.zeros((b, K), dtype=np.uint8)
    for g in prange(b):
        a = np.empty((n, n))
        at = np.empty((n, n))
        check_one(n, rows[g], slack, flags, g, a, at)
    return slack, flags


@njit(cache=True)
def mask_rows(n, start, stop):
    """Bit rows of the labeled graphs with edge masks in [start, stop)."""
    b = stop - start
    rows = np.zeros((b, n), dtype=np.int64)
    for g in range(b):
        mask = start + g
        k = 0
        for j in range(1, n):
            for i in range(j):
                if mask >> k & 1:
                    rows[g, i] |= 1 << j
                    rows[g, j] |= 1 << i
                k += 1
    return rows


@njit(cache=True)
def degree_summary(n, rows):
    """Per graph: (2m, min degree, max degree, n*s)."""
    b = rows.shape[0]
    out = np.empty((b, 4), dtype=np.int64)
    for g in range(b):
        T = 0
        lo = n
        hi = 0
        for u in range(n):
            k = _popcount(rows[g, u])
            T += k
            lo = min(lo, k)
            hi = max(hi, k)
        S = 0
        for u in range(n):
            S += abs(n * _popcount(rows[g, u]) - T)
        out[g, 0] = T
        out[g, 1] = lo
        out[g, 2] = hi
        out[g, 3] = S
    return out
