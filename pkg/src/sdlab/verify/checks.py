"""Per-graph evaluation of every inequality, built from the library routines."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..bounds import (BoundContext, BoundValue, ali_bound, corollary1_bound, haviland_bound,
                      niki_bound, theorem1_bound, theorem2_bound, theorem3_bound, theorem_f1,
                      theorem_f2)
from ..graph import DegreeStats, Graph, degree_stats
from ..spectral import check_lemma1, spectral_result
from .kernel import CHECKS, FLOAT_TOL

# bounds whose equality cases are of interest (identity checks always "equal")
BOUND_CHECKS = CHECKS[6:]


@dataclass(frozen=True)
class CheckResult:
    name: str
    bound: float
    applicable: bool
    satisfied: bool
    slack: float
    equality: bool
    computable: bool = True

    @property
    def violation(self) -> bool:
        return self.applicable and not self.satisfied

    @property
    def outside_failure(self) -> bool:
        """Failure of a check evaluated outside its hypotheses (expected, not a bug)."""
        return not self.applicable and self.computable and not self.satisfied


@dataclass(frozen=True)
class GraphReport:
    graph_id: str
    stats: DegreeStats
    lam: float
    lam_tilde: float
    checks: tuple[CheckResult, ...]

    def check(self, name: str) -> CheckResult:
        return self.checks[CHECKS.index(name)]

    @property
    def violations(self) -> list[CheckResult]:
        return [c for c in self.checks if c.violation]

    def equalities(self) -> list[str]:
        return [c.name for c in self.checks if c.applicable and c.equality and c.name in BOUND_CHECKS]


def _identity(name: str, ok: bool) -> CheckResult:
    return CheckResult(name, 0.0, True, ok, 0.0 if ok else -1.0, ok)


def _upper_exact(name: str, bv: BoundValue, s: Fraction) -> CheckResult:
    """``s <= bound`` decided exactly on the surd terms."""
    if not bv.exact:
        return CheckResult(name, bv.value, bv.applicable, False, math.nan, False, False)
    sign = bv.compare(s)
    return CheckResult(name, bv.value, bv.applicable, sign <= 0, bv.value - float(s), sign == 0)


def _lower_float(name: str, quantity: float, bound: float, applicable: bool,
                 computable: bool = True) -> CheckResult:
    """``quantity >= bound`` up to FLOAT_TOL."""
    if not computable or math.isnan(bound):
        return CheckResult(name, bound, applicable, False, math.nan, False, False)
    slack = quantity - bound
    return CheckResult(name, bound, applicable, slack >= -FLOAT_TOL, slack, abs(slack) <= FLOAT_TOL)


def check_graph(g: Graph) -> GraphReport:
    """Evaluate every check on ``g``; inapplicable checks are still evaluated."""
    st = degree_stats(g)
    n, m, d, s = g.n, st.m, st.d, st.s
    sp = spectral_result(g) if m > 0 else None
    lam = sp.lam if sp else 0.0
    lam_t = sp.lam_tilde if sp else float(d)
    lam_tj = sp.lam_tilde_jacobi if sp else 0.0
    df = float(d)
    out = []

    l1 = check_lemma1(g)
    out.append(_identity("lemma1_weight", l1["total_weight"]))
    out.append(_identity("lemma1_deviation", l1["deviation"]))
    out.append(_identity("lemma1_degrees", l1["degree_ranges"] and l1["weights_in_unit"]))

    out.append(_lower_float("lemma2_upper", lam, lam_t, True))
    out.append(_lower_float("lemma2_lower", lam_t, df, True))
    diff = abs(lam_t - lam_tj)
    out.append(CheckResult("lemma2_closed_form", lam_tj, True, diff <= FLOAT_TOL, -diff, False))

    ctx = BoundContext.from_graph(g)
    out.append(_upper_exact("haviland", haviland_bound(ctx), s))
    out.append(_upper_exact("ali", ali_bound(ctx), s))
    out.append(_upper_exact("theorem1", theorem1_bound(ctx), s))
    out.append(_upper_exact("theorem2", theorem2_bound(BoundContext.from_graph(g, delta_lo=0)), s))

    t3 = theorem3_bound(n, d, s)
    out.append(_lower_float("theorem3", lam_t, t3.value, t3.applicable))
    out.append(_lower_float("theorem3_lambda", lam, t3.value, t3.applicable))

    has_edges = m >= 1
    gap6 = float(s) ** 2 / (2.0 * n * n * math.sqrt(2.0 * m)) if has_edges else math.nan
    out.append(_lower_float("nikiforov6_lower", lam - df, gap6, has_edges, has_edges))
    cor = corollary1_bound(n, d, s)
    out.append(_lower_float("corollary1", lam - df, cor.value - df, cor.applicable, has_edges))
    out.append(_lower_float("corollary1_tilde", lam_t - df, cor.value - df, cor.applicable, has_edges))

    f1 = theorem_f1(n, d, s)
    out.append(_lower_float("f1", lam, f1.value, f1.applicable))
    f2 = theorem_f2(n, d, s)
    out.append(_lower_float("f2", lam, f2.value, f2.applicable))
    nk = niki_bound(n, d, s)
    out.append(_lower_float("niki", lam, nk.value, nk.applicable, has_edges))

    sf = float(s)
    for name, up in (("upper_sqrt", math.sqrt(sf)), ("upper_zhang", math.sqrt(0.9 * sf)),
                     ("upper_rw23", math.sqrt(2.0 * sf / 3.0))):
        slack = up - (lam - df)
        out.append(CheckResult(name, up, True, slack >= -FLOAT_TOL, slack, abs(slack) <= FLOAT_TOL))

    assert tuple(c.name for c in out) == CHECKS
    return GraphReport(str(g), st, lam, lam_t, tuple(out))
