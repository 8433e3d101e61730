"""Upper bound on the deviation from the smoothed maximisation problem.

For a fixed size ``n_plus`` of the above-average part the problem is a
linear program in the three weights. Each LP is solved exactly by
enumerating the vertices of its (bounded) feasible polytope in rational
arithmetic, so no solver tolerance enters the comparison with the
closed-form bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..bounds import BoundContext, theorem1_exact

# variable order: w_plus, w_minus, w_cross


@dataclass(frozen=True)
class PiInstance:
    n: int
    m: int
    delta_lo: int
    delta_hi: int

    def __post_init__(self):
        d = self.d
        if not (0 <= self.delta_lo < d < self.delta_hi < self.n):
            raise ValueError(f"need 0 <= delta < d < Delta < n, got delta={self.delta_lo}, "
                             f"d={d}, Delta={self.delta_hi}, n={self.n}")

    @property
    def d(self) -> Fraction:
        return Fraction(2 * self.m, self.n)

    def context(self, s=0) -> BoundContext:
        return BoundContext.from_params(self.n, self.m, self.delta_lo, self.delta_hi, s)


@dataclass(frozen=True)
class PiSolution:
    n_plus: int
    objective: Fraction | None     # None: infeasible (objective -infinity)
    w_plus: Fraction | None = None
    w_minus: Fraction | None = None
    w_cross: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.objective is not None

    def degrees(self, n: int) -> tuple[Fraction, Fraction]:
        k, l = self.n_plus, n - self.n_plus
        return ((k - 1) * self.w_plus + l * self.w_cross,
                (l - 1) * self.w_minus + k * self.w_cross)


def _comb2(k):
    return k * (k - 1) // 2


def _objective(inst: PiInstance, k: int, w) -> Fraction:
    l, d = inst.n - k, inst.d
    return k * (w[0] * (k - 1) - d) + l * (d - w[1] * (l - 1))


def _constraints(inst: PiInstance, k: int):
    """Rows ``(coeffs, rhs, kind)`` with kind in {'eq', 'le'}: coeffs.w <= rhs."""
    n, d = inst.n, inst.d
    l = n - k
    rows = [((Fraction(_comb2(k)), Fraction(_comb2(l)), Fraction(k * l)), Fraction(inst.m), "eq")]
    for i in range(3):
        e = [Fraction(0)] * 3
        e[i] = Fraction(1)
        rows.append((tuple(e), Fraction(1), "le"))
        rows.append((tuple(-x for x in e), Fraction(0), "le"))
    # degree windows of empty parts are vacuous
    if k > 0:
        dp = (Fraction(k - 1), Fraction(0), Fraction(l))
        rows.append((dp, Fraction(inst.delta_hi), "le"))
        rows.append((tuple(-x for x in dp), -d, "le"))
    if l > 0:
        dm = (Fraction(0), Fraction(l - 1), Fraction(k))
        rows.append((dm, d, "le"))
        rows.append((tuple(-x for x in dm), -Fraction(inst.delta_lo), "le"))
    return rows


def _solve3(a, b):
    """Solve a 3x3 rational system; None if singular."""
    m = [list(a[i]) + [b[i]] for i in range(3)]
    for col in range(3):
        piv = next((r for r in range(col, 3) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][3] / m[i][i] for i in range(3))


def _feasible(rows, w) -> bool:
    for coeffs, rhs, kind in rows:
        lhs = sum(c * x for c, x in zip(coeffs, w))
        if kind == "eq" and lhs != rhs:
            return False
        if kind == "le" and lhs > rhs:
            return False
    return True


def solve_pi_subproblem(inst: PiInstance, n_plus: int) -> PiSolution:
    """Exact LP optimum for a fixed plus-part size by vertex enumeration."""
    if not 0 <= n_plus <= inst.n:
        raise ValueError("need 0 <= n_plus <= n")
    rows = _constraints(inst, n_plus)
    best = None
    best_w = None
    for triple in combinations(rows, 3):
        w = _solve3([r[0] for r in triple], [r[1] for r in triple])
        if w is None or not _feasible(rows, w):
            continue
        val = _objective(inst, n_plus, w)
        if best is None or val > best:
            best, best_w = val, w
    if best is None:
        return PiSolution(n_plus, None)
    return PiSolution(n_plus, best, *best_w)


@dataclass(frozen=True)
class PiResult:
    opt: Fraction
    argmax: PiSolution
    per_n_plus: tuple[PiSolution, ...]


def solve_pi(inst: PiInstance) -> PiResult:
    sols = tuple(solve_pi_subproblem(inst, k) for k in range(inst.n + 1))
    feasible = [s for s in sols if s.feasible]
    if not feasible:
        raise ArithmeticError(f"no feasible n_plus for {inst}")
    best = max(feasible, key=lambda s: (s.objective, -s.n_plus))
    bound = theorem1_exact(inst.context())
    if best.objective > bound:
        raise ArithmeticError(f"LP optimum {best.objective} exceeds closed-form bound {bound}")
    return PiResult(best.objective, best, sols)


@dataclass(frozen=True)
class PiCandidate:
    n_plus: Fraction
    n_minus: Fraction
    w_plus: Fraction
    w_minus: Fraction
    w_cross: Fraction
    objective: Fraction


def pi_tightness_candidates(inst: PiInstance) -> list[PiCandidate]:
    """The two explicit relaxed solutions attaining the closed-form bound.

    Returns those whose weights lie in [0, 1] (and that satisfy every
    constraint of the relaxation); each attains the bound exactly.
    """
    n, d = inst.n, inst.d
    lo, hi = Fraction(inst.delta_lo), Fraction(inst.delta_hi)
    k = (d - lo) * n / (hi - lo)
    l = (hi - d) * n / (hi - lo)
    dn = d * n
    raw = []
    den1 = (dn - hi) * ((hi - d) * n - (hi - lo))
    if dn != hi and den1 != 0:
        raw.append((hi * hi / (dn - hi),
                    (lo * (hi - d) * n - hi * (hi - lo)) * lo / den1,
                    lo * hi / (dn - hi)))
    den2 = (dn - lo) * ((d - lo) * n - (hi - lo))
    if dn != lo and den2 != 0:
        raw.append(((hi * (d - lo) * n - lo * (hi - lo)) * hi / den2,
                    lo * lo / (dn - lo),
                    lo * hi / (dn - lo)))
    bound = theorem1_exact(inst.context())
    out = []
    for wp, wm, wc in raw:
        if not all(0 <= w <= 1 for w in (wp, wm, wc)):
            continue
        if k < 1 or l < 1:
            continue
        edges = k * (k - 1) / 2 * wp + k * l * wc + l * (l - 1) / 2 * wm
        dp = (k - 1) * wp + l * wc
        dm = (l - 1) * wm + k * wc
        if edges != inst.m or not (d <= dp <= hi) or not (lo <= dm <= d):
            continue
        obj = k * (wp * (k - 1) - d) + l * (d - wm * (l - 1))
        if obj != bound:
            raise ArithmeticError(f"candidate objective {obj} != bound {bound}")
        out.append(PiCandidate(k, l, wp, wm, wc, obj))
    return out
