"""Corpus sweeps: run every check over many graphs and aggregate the results.

Per-graph results come from the compiled kernel; aggregation walks graphs in
corpus order, so reports do not depend on the number of worker threads.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Iterator
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numba
import numpy as np

from ..bounds import BoundContext, theorem1_exact
from ..graph import MAX_LABELED_N, Graph, Graph6Error, graph_from_mask, labeled_count, read_graph6_lines
from ..optimize.pi import PiInstance, solve_pi
from .checks import BOUND_CHECKS
from .kernel import (APPLICABLE, CHECKS, COMPUTABLE, EQUALITY, HOLDS, check_rows, degree_summary,
                     mask_rows)

CHUNK = 1 << 16
WITNESS_CAP = 100
OUTSIDE_CAP = 100


def set_jobs(jobs: int | None) -> int:
    """Set the kernel thread count (clamped to what numba was started with)."""
    top = numba.config.NUMBA_NUM_THREADS
    jobs = top if jobs is None or jobs <= 0 else min(jobs, top)
    numba.set_num_threads(jobs)
    return jobs


@dataclass
class CheckCounts:
    evaluated: int = 0
    applicable: int = 0
    satisfied: int = 0
    violations: int = 0
    equalities: int = 0
    outside_failures: int = 0


@dataclass(frozen=True)
class Finding:
    graph: str
    check: str
    slack: float
    line: int | None = None


@dataclass
class SweepReport:
    params: dict
    graphs: int = 0
    counts: dict[str, CheckCounts] = field(default_factory=lambda: {c: CheckCounts() for c in CHECKS})
    violations: list[Finding] = field(default_factory=list)
    outside: list[Finding] = field(default_factory=list)
    witnesses: dict[str, list[str]] = field(default_factory=lambda: {c: [] for c in BOUND_CHECKS})
    malformed: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "graphs": self.graphs,
            "counts": {k: asdict(v) for k, v in self.counts.items()},
            "violations": [_finding_dict(f) for f in self.violations],
            "expectedOutsideHypothesis": [_finding_dict(f) for f in self.outside],
            "equalityWitnesses": [{"check": k, "graphs": v} for k, v in self.witnesses.items() if v],
            "malformed": [{"line": ln, "error": msg} for ln, msg in self.malformed],
        }

    def summary_lines(self) -> list[str]:
        out = [f"graphs: {self.graphs}  malformed: {len(self.malformed)}  "
               f"violations: {len(self.violations)}"]
        for name, c in self.counts.items():
            out.append(f"{name:20s} applicable={c.applicable:<9d} satisfied={c.satisfied:<9d} "
                       f"violations={c.violations:<4d} equalities={c.equalities:<8d} "
                       f"outside_failures={c.outside_failures}")
        for f in self.violations:
            out.append(f"VIOLATION {f.check} {f.graph} slack={f.slack!r}")
        return out


def _finding_dict(f: Finding) -> dict:
    d = asdict(f)
    if isinstance(f.slack, float) and math.isnan(f.slack):
        d["slack"] = None
    if f.line is None:
        del d["line"]
    return d


CSV_HEADER = ("graph", "check", "applicable", "satisfied", "equality", "slack")


def _accumulate(report: SweepReport, slack: np.ndarray, flags: np.ndarray, graph_id, lines=None,
                csv_writer=None, witness_cap: int | None = WITNESS_CAP) -> None:
    """Fold one batch of kernel output into ``report`` (batch order is corpus order)."""
    app = (flags & APPLICABLE) > 0
    holds = (flags & HOLDS) > 0
    eq = (flags & EQUALITY) > 0
    comp = (flags & COMPUTABLE) > 0
    viol = app & ~holds
    outside = ~app & comp & ~holds
    witness = app & eq
    report.graphs += flags.shape[0]
    tallies = np.stack([comp.sum(0), app.sum(0), (app & holds).sum(0), viol.sum(0),
                        witness.sum(0), outside.sum(0)], axis=1)
    for k, name in enumerate(CHECKS):
        c = report.counts[name]
        c.evaluated += int(tallies[k, 0])
        c.applicable += int(tallies[k, 1])
        c.satisfied += int(tallies[k, 2])
        c.violations += int(tallies[k, 3])
        c.equalities += int(tallies[k, 4])
        c.outside_failures += int(tallies[k, 5])

    def line(i):
        return None if lines is None else int(lines[i])

    for i, k in zip(*np.nonzero(viol)):
        report.violations.append(Finding(graph_id(i), CHECKS[k], float(slack[i, k]), line(i)))
    for i, k in zip(*np.nonzero(outside)):
        if len(report.outside) < OUTSIDE_CAP:
            report.outside.append(Finding(graph_id(i), CHECKS[k], float(slack[i, k]), line(i)))
    for name in BOUND_CHECKS:
        k = CHECKS.index(name)
        found = report.witnesses[name]
        for i in np.nonzero(witness[:, k])[0]:
            if witness_cap is not None and len(found) >= witness_cap:
                break
            found.append(graph_id(i))
    if csv_writer is not None:
        for i in range(flags.shape[0]):
            gid = graph_id(i)
            for k, name in enumerate(CHECKS):
                csv_writer.writerow((gid, name, int(app[i, k]), int(holds[i, k]), int(eq[i, k]),
                                     repr(float(slack[i, k]))))


def labeled_graph6(n: int, mask: int) -> str:
    return str(graph_from_mask(n, mask))


def iter_labeled_batches(n: int, chunk: int = CHUNK) -> Iterator[tuple[int, np.ndarray]]:
    """``(first mask, rows)`` batches covering every labeled graph on n vertices."""
    if not 1 <= n <= MAX_LABELED_N:
        raise ValueError(f"labeled enumeration needs 1 <= n <= {MAX_LABELED_N}")
    total = labeled_count(n)
    for start in range(0, total, chunk):
        yield start, mask_rows(n, start, min(total, start + chunk))


def verify_labeled(ns: Iterable[int], jobs: int | None = None, csv_writer=None,
                   witness_cap: int | None = WITNESS_CAP, chunk: int = CHUNK) -> SweepReport:
    """Run every check over all labeled graphs for each n in ``ns``."""
    ns = list(ns)
    set_jobs(jobs)
    report = SweepReport({"source": "labeled", "n": ns})
    for n in ns:
        for start, rows in iter_labeled_batches(n, chunk):
            slack, flags = check_rows(n, rows)
            _accumulate(report, slack, flags, lambda i, n=n, s=start: labeled_graph6(n, s + int(i)),
                        csv_writer=csv_writer, witness_cap=witness_cap)
    return report


def verify_graphs(graphs: Iterable[tuple[int, Graph | Graph6Error]], params: dict,
                  jobs: int | None = None, csv_writer=None,
                  witness_cap: int | None = WITNESS_CAP) -> SweepReport:
    """Run every check over ``(line number, graph or parse error)`` pairs."""
    set_jobs(jobs)
    report = SweepReport(params)
    items = list(graphs)
    good = []
    for lineno, g in items:
        if isinstance(g, Graph6Error):
            report.malformed.append((lineno, str(g)))
        else:
            good.append((lineno, g))
    # batch consecutive graphs of equal order; keeps corpus order in the report
    i = 0
    while i < len(good):
        n = good[i][1].n
        j = i
        while j < len(good) and good[j][1].n == n and j - i < CHUNK:
            j += 1
        batch = good[i:j]
        rows = np.array([g.rows for _, g in batch], dtype=np.int64).reshape(len(batch), n)
        slack, flags = check_rows(n, rows)
        _accumulate(report, slack, flags, lambda t, b=batch: str(b[t][1]),
                    lines=[ln for ln, _ in batch], csv_writer=csv_writer, witness_cap=witness_cap)
        i = j
    return report


def verify_graph6_file(path: str | Path, jobs: int | None = None, csv_writer=None,
                       witness_cap: int | None = WITNESS_CAP) -> SweepReport:
    """Sweep a graph6 file; malformed lines are recorded and skipped. Raises OSError if unreadable."""
    with open(path, "rb") as fh:
        lines = fh.read().splitlines()
    return verify_graphs(read_graph6_lines(lines), {"source": "graph6", "path": str(path)},
                         jobs, csv_writer, witness_cap)


def csv_text(write) -> str:
    """Run ``write(writer)`` against an in-memory CSV writer with the standard header."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    write(w)
    return buf.getvalue()


# relaxation cross-check ----------------------------------------------------------


@dataclass(frozen=True)
class TupleCheck:
    n: int
    m: int
    delta_lo: int
    delta_hi: int
    max_s: Fraction
    opt: Fraction
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.max_s <= self.opt <= self.bound


@dataclass
class PiCrossReport:
    n: int
    tuples: list[TupleCheck]
    skipped: int

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.tuples)

    @property
    def failures(self) -> list[TupleCheck]:
        return [t for t in self.tuples if not t.ok]


def realized_tuples(n: int, jobs: int | None = None) -> dict[tuple[int, int, int], int]:
    """Max of ``n*s`` over labeled graphs, keyed by (2m, min degree, max degree)."""
    set_jobs(jobs)
    best: dict[tuple[int, int, int], int] = {}
    for _, rows in iter_labeled_batches(n):
        summ = degree_summary(n, rows)
        keys, inv = np.unique(summ[:, :3], axis=0, return_inverse=True)
        mx = np.full(len(keys), -1, dtype=np.int64)
        np.maximum.at(mx, inv.ravel(), summ[:, 3])
        for key, v in zip(keys, mx):
            key = tuple(int(x) for x in key)
            best[key] = max(best.get(key, -1), int(v))
    return best


def pi_cross_check(n: int, jobs: int | None = None) -> PiCrossReport:
    """Check ``max s <= OPT(P_I) <= closed-form bound`` for every realized degree tuple."""
    if not 1 <= n <= 7:
        raise ValueError("cross-check supports 1 <= n <= 7")
    out, skipped = [], 0
    for (total, lo, hi), best in sorted(realized_tuples(n, jobs).items()):
        if not (n * lo < total < n * hi):
            skipped += 1
            continue
        inst = PiInstance(n, total // 2, lo, hi)
        res = solve_pi(inst)
        out.append(TupleCheck(n, total // 2, lo, hi, Fraction(best, n), res.opt,
                              theorem1_exact(BoundContext.from_params(n, total // 2, lo, hi))))
    return PiCrossReport(n, out, skipped)


# equality hunt --------------------------------------------------------------------


@dataclass(frozen=True)
class HuntHit:
    graph: str
    bipartite: bool | None = None


def equality_hunt(bound: str, graphs: Iterable[Graph] | None = None, ns: Iterable[int] = (),
                  jobs: int | None = None) -> list[HuntHit]:
    """Every graph (labeled on each n in ``ns``, then ``graphs``) attaining ``bound`` with equality.

    Only graphs inside the bound's hypotheses count. For "ali" each hit
    also reports whether the graph is bipartite.
    """
    if bound not in BOUND_CHECKS:
        raise ValueError(f"unknown bound {bound!r}; choose from {', '.join(BOUND_CHECKS)}")
    set_jobs(jobs)
    k = CHECKS.index(bound)
    found: list[Graph] = []
    for n in ns:
        for start, rows in iter_labeled_batches(n):
            _, flags = check_rows(n, rows)
            hit = ((flags[:, k] & APPLICABLE) > 0) & ((flags[:, k] & EQUALITY) > 0)
            found.extend(graph_from_mask(n, start + int(i)) for i in np.nonzero(hit)[0])
    extra = list(graphs or ())
    by_n: dict[int, list[int]] = {}
    for i, g in enumerate(extra):
        by_n.setdefault(g.n, []).append(i)
    hits = []
    for n, idx in by_n.items():
        rows = np.array([extra[i].rows for i in idx], dtype=np.int64).reshape(len(idx), n)
        _, flags = check_rows(n, rows)
        hit = ((flags[:, k] & APPLICABLE) > 0) & ((flags[:, k] & EQUALITY) > 0)
        hits.extend(idx[int(j)] for j in np.nonzero(hit)[0])
    found.extend(extra[i] for i in sorted(hits))
    with_bip = bound == "ali"
    return [HuntHit(str(g), g.is_bipartite() if with_bip else None) for g in found]
