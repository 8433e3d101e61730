"""Command-line front end: ``sdlab <command> [flags]``."""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .bounds import (BoundContext, figure1_ratio, figure2_curves, theorem1_exact, theorem3_bound)
from .graph import FAMILIES, Graph, Graph6Error, degree_stats, make_family, parse_edge_list, parse_graph6
from .optimize.pi import PiInstance, pi_tightness_candidates, solve_pi
from .optimize.q import critical_point_residual, minimize_q, q_critical_point
from .spectral import smooth

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# formatting ---------------------------------------------------------------------


def _num(x):
    """JSON value: rationals as "p/q" strings, floats as shortest round-trip repr, nan as null."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (Fraction, int)):
        return str(Fraction(x))
    if isinstance(x, float):
        return None if math.isnan(x) else x
    return x


def _text(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _emit(args, payload: dict, text_lines: list[str] | None = None, csv_rows=None) -> None:
    out = args.out
    if args.format == "json":
        json.dump(payload, out, indent=2, allow_nan=False)
        out.write("\n")
    elif args.format == "csv":
        if csv_rows is None:
            raise UsageError(f"command {args.command!r} has no CSV form")
        w = csv.writer(out, lineterminator="\n")
        for row in csv_rows:
            w.writerow(row)
    else:
        lines = text_lines if text_lines is not None else [f"{k}={v}" for k, v in payload.items()]
        out.write("\n".join(lines) + "\n")


def _parse_ns(spec: str) -> list[int]:
    """``"7"``, ``"1-6"`` or ``"3,5"``."""
    out = []
    for part in spec.split(","):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _jobs_default() -> int:
    env = os.environ.get("SDLAB_JOBS")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SDLAB_JOBS must be an integer, got {env!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# commands -----------------------------------------------------------------------


def _load_graph(args) -> Graph:
    given = [x is not None for x in (args.graph6, args.edges, args.family)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --graph6, --edges, --family")
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    if args.edges is not None:
        return parse_edge_list(args.edges.replace(";", "\n"), args.n)
    return make_family(args.family, args.params)


def cmd_analyze(args) -> int:
    from .verify import check_graph

    g = _load_graph(args)
    st = degree_stats(g)
    sg = smooth(g)
    rep = check_graph(g)
    payload = {
        "graph6": str(g), "n": g.n, "m": st.m, "d": _num(st.d), "s": _num(st.s),
        "delta": st.delta_min, "Delta": st.delta_max,
        "lambda": rep.lam, "lambdaTilde": rep.lam_tilde,
        "nPlus": sg.n_plus, "wPlus": _num(sg.w_plus), "wMinus": _num(sg.w_minus),
        "wCross": _num(sg.w_cross),
        "checks": [{"name": c.name, "bound": _num(c.bound), "applicable": c.applicable,
                    "satisfied": c.satisfied, "slack": _num(c.slack), "equality": c.equality}
                   for c in rep.checks],
    }
    lines = [f"graph6={g}", f"n={g.n}", f"m={st.m}", f"d={st.d}", f"s={st.s}",
             f"delta={st.delta_min}", f"Delta={st.delta_max}",
             f"λ={_text(rep.lam)}", f"λ̃={_text(rep.lam_tilde)}",
             f"smoothing: n+={sg.n_plus} w+={sg.w_plus} w-={sg.w_minus} w±={sg.w_cross}"]
    for c in rep.checks:
        if not c.computable:
            state = "undefined"
        elif c.satisfied:
            state = "ok"
        else:
            state = "VIOLATED" if c.applicable else "fails (outside hypotheses)"
        tag = " equality" if c.applicable and c.equality else ""
        hyp = "" if c.applicable else " [n/a]"
        lines.append(f"  {c.name:20s} slack={_text(c.slack)} {state}{tag}{hyp}")
    rows = [("check", "bound", "applicable", "satisfied", "equality", "slack")]
    rows += [(c.name, repr(c.bound), int(c.applicable), int(c.satisfied), int(c.equality), repr(c.slack))
             for c in rep.checks]
    _emit(args, payload, lines, rows)
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_opt_pi(args) -> int:
    try:
        inst = PiInstance(args.n, args.m, args.delta, args.Delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = solve_pi(inst)
    bound = theorem1_exact(BoundContext.from_params(inst.n, inst.m, inst.delta_lo, inst.delta_hi))

    def sol(p):
        return {"nPlus": p.n_plus, "objective": _num(p.objective), "wPlus": _num(p.w_plus),
                "wMinus": _num(p.w_minus), "wCross": _num(p.w_cross)}

    cands = pi_tightness_candidates(inst)
    payload = {
        "n": inst.n, "m": inst.m, "delta": inst.delta_lo, "Delta": inst.delta_hi,
        "opt": _num(res.opt), "theorem1": _num(bound), "argmax": sol(res.argmax),
        "perNPlus": [sol(p) for p in res.per_n_plus],
        "candidates": [{k: _num(v) for k, v in vars(c).items()} for c in cands],
    }
    lines = [f"OPT(P_I) = {res.opt}  (closed-form bound {bound})",
             f"argmax n+ = {res.argmax.n_plus}: w+={res.argmax.w_plus} w-={res.argmax.w_minus} "
             f"w±={res.argmax.w_cross}"]
    lines += [f"  n+={p.n_plus}: " + ("infeasible" if not p.feasible else str(p.objective))
              for p in res.per_n_plus]
    lines.append(f"feasible tightness candidates: {len(cands)}")
    rows = [("nPlus", "objective", "wPlus", "wMinus", "wCross")]
    rows += [tuple("" if v is None else str(v) for v in
                   (p.n_plus, p.objective, p.w_plus, p.w_minus, p.w_cross)) for p in res.per_n_plus]
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_opt_q(args) -> int:
    n, d, s = args.n, args.d, args.s
    if s <= 0 or not 0 < d < n:
        raise UsageError("need s > 0 and 0 < d < n")
    best, pt = minimize_q(n, d, s, grid=args.grid, with_l2=args.with_l2)
    t3 = theorem3_bound(n, d, s).value
    try:
        crit = q_critical_point(float(n), float(d), float(s))
        resid = critical_point_residual(float(n), float(d), float(s))
    except ZeroDivisionError:
        crit, resid = math.nan, None
    payload = {"n": _num(n), "d": _num(d), "s": _num(s), "withL2": args.with_l2,
               "min": best, "nPlus": pt.n_plus, "xPlus": pt.x_plus, "xMinus": pt.x_minus,
               "wCross": pt.w_cross, "theorem3": t3, "gap": best - t3,
               "criticalPoint": _num(crit), "criticalResidual": resid}
    lines = [f"min f = {_text(best)} at n+={_text(pt.n_plus)}, x+={_text(pt.x_plus)}",
             f"closed-form lower bound = {_text(t3)} (gap {best - t3:.3e})",
             f"critical point on L: {_text(crit)}" + ("" if resid is None else f" (residual {resid:.2e})")]
    rows = [tuple(payload), tuple("" if v is None else v for v in payload.values())]
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import pi_cross_check, verify_graph6_file, verify_labeled
    from .verify.sweep import CSV_HEADER

    if (args.n is None) == (args.input is None):
        raise UsageError("give exactly one of --n and --input")
    jobs = args.jobs
    writer = None
    if args.format == "csv":
        writer = csv.writer(args.out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
    if args.n is not None:
        ns = _parse_ns(args.n)
        if not all(1 <= k <= 8 for k in ns):
            raise UsageError("labeled sweeps need 1 <= n <= 8")
        report = verify_labeled(ns, jobs=jobs, csv_writer=writer, witness_cap=args.witness_cap)
    else:
        try:
            report = verify_graph6_file(args.input, jobs=jobs, csv_writer=writer,
                                        witness_cap=args.witness_cap)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    for ln, msg in report.malformed:
        print(f"line {ln}: {msg}", file=sys.stderr)
    code = report.exit_code()
    if args.relaxation:
        if args.n is None:
            raise UsageError("--relaxation needs --n")
        tuples = []
        for k in _parse_ns(args.n):
            if k > 7:
                raise UsageError("--relaxation supports n <= 7")
            pr = pi_cross_check(k, jobs)
            tuples += pr.tuples
            if not pr.ok:
                code = EXIT_VIOLATION
    if args.format == "json":
        payload = report.to_dict()
        if args.relaxation:
            payload["relaxation"] = [{"n": t.n, "m": t.m, "delta": t.delta_lo, "Delta": t.delta_hi,
                                      "maxS": _num(t.max_s), "opt": _num(t.opt),
                                      "bound": _num(t.bound), "ok": t.ok} for t in tuples]
        _emit(args, payload)
    elif args.format == "text":
        lines = report.summary_lines()
        if args.relaxation:
            bad = [t for t in tuples if not t.ok]
            lines.append(f"relaxation sandwich: {len(tuples)} tuples, {len(bad)} failures")
            lines += [f"  FAIL {t}" for t in bad]
        _emit(args, {}, lines)
    return code


def cmd_extremal(args) -> int:
    g = make_family(args.family, args.params)
    st = degree_stats(g)
    payload = {"family": args.family, "params": args.params, "graph6": str(g),
               "n": g.n, "m": st.m, "d": _num(st.d), "s": _num(st.s)}
    lines = [str(g)] if args.format == "text" else None
    rows = [tuple(payload), tuple(str(v) for v in payload.values())]
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_figure1(args) -> int:
    lo, hi = args.delta, args.Delta
    if not 0 < lo < hi:
        raise UsageError("need 0 < delta < Delta")
    if args.points < 1:
        raise UsageError("--points must be positive")
    # the ratio is scale invariant in (delta, d, Delta)
    xs = lo + (hi - lo) * np.arange(1, args.points + 1) / (args.points + 1)
    pts = [(float(x), figure1_ratio(float(x) / lo, hi / lo)) for x in xs]
    payload = {"delta": lo, "Delta": hi, "points": [{"x": x, "g": gx} for x, gx in pts]}
    rows = [("x", "g")] + [(repr(x), repr(gx)) for x, gx in pts]
    _emit(args, payload, [f"{x!r},{gx!r}" for x, gx in pts], rows)
    return EXIT_OK


def cmd_figure2(args) -> int:
    if args.points < 1:
        raise UsageError("--points must be positive")
    xs = 0.5 + 0.3 * np.arange(1, args.points + 1) / args.points
    pts = [(float(x), *figure2_curves(float(x))) for x in xs]
    payload = {"points": [{"x": x, "h1": h, "s1": s} for x, h, s in pts]}
    rows = [("x", "h1", "s1")] + [(repr(x), repr(h), repr(s)) for x, h, s in pts]
    _emit(args, payload, [f"{x!r},{h!r},{s!r}" for x, h, s in pts], rows)
    return EXIT_OK


def cmd_hunt(args) -> int:
    from .graph import read_graph6_lines
    from .verify import BOUND_CHECKS, equality_hunt

    if args.bound not in BOUND_CHECKS:
        raise UsageError(f"unknown bound {args.bound!r}; choose from {', '.join(BOUND_CHECKS)}")
    if (args.n is None) == (args.input is None):
        raise UsageError("give exactly one of --n and --input")
    graphs = []
    if args.input is not None:
        try:
            with open(args.input, "rb") as fh:
                data = fh.read().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from None
        for ln, g in read_graph6_lines(data):
            if isinstance(g, Graph6Error):
                print(f"line {ln}: {g}", file=sys.stderr)
            else:
                graphs.append(g)
    ns = _parse_ns(args.n) if args.n is not None else []
    if not all(1 <= k <= 8 for k in ns):
        raise UsageError("labeled enumeration needs 1 <= n <= 8")
    hits = equality_hunt(args.bound, graphs, ns, jobs=args.jobs)
    payload = {"bound": args.bound, "count": len(hits),
               "witnesses": [{"graph6": h.graph, **({} if h.bipartite is None else {"bipartite": h.bipartite})}
                             for h in hits]}
    lines = [h.graph + ("" if h.bipartite is None else f" bipartite={h.bipartite}") for h in hits]
    rows = [("graph6", "bipartite")] + [(h.graph, "" if h.bipartite is None else int(h.bipartite))
                                        for h in hits]
    _emit(args, payload, lines, rows)
    return EXIT_OK


# parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdlab", description="Degree deviation and spectral radius toolkit.")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
        sp.add_argument("--output", "-o", default=argparse.SUPPRESS)

    a = sub.add_parser("analyze", help="degree, smoothing and spectral report for one graph")
    a.add_argument("--graph6")
    a.add_argument("--edges", help='edge list of "u v" pairs separated by newlines or ";"')
    a.add_argument("--n", type=int, help="vertex count for --edges")
    a.add_argument("--family", choices=FAMILIES)
    a.add_argument("--params", type=int, nargs="*", default=[])
    fmt(a)

    o = sub.add_parser("opt-pi", help="solve the linear relaxation exactly")
    for name in ("--n", "--m", "--delta", "--Delta"):
        o.add_argument(name, type=int, required=True)
    fmt(o)

    q = sub.add_parser("opt-q", help="minimise the eigenvalue relaxation")
    for name in ("--n", "--d", "--s"):
        q.add_argument(name, type=_rational, required=True)
    q.add_argument("--grid", type=int, default=512)
    q.add_argument("--with-l2", action="store_true", help="also impose w_cross <= 1")
    fmt(q)

    v = sub.add_parser("verify", help="check every inequality over a corpus")
    v.add_argument("--n", help='labeled graphs on n vertices: "7", "1-6" or "4,5"')
    v.add_argument("--input", help="graph6 file, one graph per line")
    v.add_argument("--jobs", type=int, default=None)
    v.add_argument("--witness-cap", type=int, default=100)
    v.add_argument("--relaxation", action="store_true",
                   help="also check max s <= OPT(P_I) <= bound for every realized degree tuple")
    fmt(v)

    e = sub.add_parser("extremal", help="emit a named graph family member in graph6")
    e.add_argument("--family", choices=FAMILIES, required=True)
    e.add_argument("--params", type=int, nargs="*", default=[])
    fmt(e)

    f1 = sub.add_parser("figure1", help="ratio of the two deviation bounds")
    f1.add_argument("--delta", type=float, default=1.0)
    f1.add_argument("--Delta", type=float, default=10.0)
    f1.add_argument("--points", type=int, default=200)
    fmt(f1)

    f2 = sub.add_parser("figure2", help="h1/n^2 and s1/n^2 against d/n")
    f2.add_argument("--points", type=int, default=300)
    fmt(f2)

    h = sub.add_parser("hunt", help="list equality witnesses of one bound")
    h.add_argument("--bound", required=True)
    h.add_argument("--n")
    h.add_argument("--input")
    h.add_argument("--jobs", type=int, default=None)
    fmt(h)
    return p


COMMANDS = {
    "analyze": cmd_analyze, "opt-pi": cmd_opt_pi, "opt-q": cmd_opt_q, "verify": cmd_verify,
    "extremal": cmd_extremal, "figure1": cmd_figure1, "figure2": cmd_figure2, "hunt": cmd_hunt,
}


def run(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "jobs", 0) is None:
            args.jobs = _jobs_default()
        if args.output is not None:
            with open(args.output, "w", newline="") as fh:
                args.out = fh
                return COMMANDS[args.command](args)
        args.out = out if out is not None else sys.stdout
        return COMMANDS[args.command](args)
    except Graph6Error as exc:
        print(f"sdlab: malformed graph6 at byte {exc.offset}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"sdlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
