from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from sdlab.graph import Graph, Graph6Error, emit_graph6, graph_from_mask, make_family
from sdlab.verify import (BOUND_CHECKS, CHECKS, SweepReport, check_graph, equality_hunt,
                          pi_cross_check, verify_graph6_file, verify_graphs, verify_labeled)
from sdlab.verify.kernel import APPLICABLE, COMPUTABLE, EQUALITY, HOLDS
from sdlab.verify.sweep import _accumulate, csv_text


def _code(g: Graph) -> str:
    return emit_graph6(g).decode()


# single-graph reports ------------------------------------------------------------


def test_star_equalities(k13):
    rep = check_graph(k13)
    assert rep.graph_id == _code(k13)
    eq = set(rep.equalities())
    assert {"haviland", "ali", "theorem1", "theorem3"} <= eq
    assert not rep.violations
    assert rep.lam == pytest.approx(math.sqrt(3), abs=1e-12)
    assert rep.lam_tilde == pytest.approx(math.sqrt(3), abs=1e-12)


def test_cycle_is_trivial():
    rep = check_graph(make_family("cycle", [5]))
    assert rep.stats.s == 0 and not rep.violations
    assert rep.lam == pytest.approx(2.0, abs=1e-12) and rep.lam_tilde == 2.0
    for c in rep.checks:
        assert c.satisfied or not c.applicable
    assert not rep.check("theorem3").applicable


def test_k23_ali_equality(k23):
    rep = check_graph(k23)
    ali = rep.check("ali")
    assert ali.applicable and ali.equality and abs(ali.slack) < 1e-12
    # two degree values: the first upper bound is attained as well
    assert rep.check("theorem1").equality
    assert Fraction(rep.stats.s) == Fraction(12, 5)


def test_check_names_cover_kernel_order(k13):
    assert [c.name for c in check_graph(k13).checks] == list(CHECKS)
    assert BOUND_CHECKS[0] == "haviland"


def test_unknown_check_name(k13):
    with pytest.raises(ValueError):
        check_graph(k13).check("nope")


# labeled sweeps -------------------------------------------------------------------


def test_sweep_n4():
    rep = verify_labeled([4])
    assert rep.graphs == 64 and rep.ok and rep.exit_code() == 0
    assert rep.counts["lemma1_weight"].satisfied == 64


@pytest.fixture(scope="module")
def sweep_small():
    return verify_labeled(range(1, 7))


def test_sweep_small_has_witnesses(sweep_small):
    assert sweep_small.ok
    assert sweep_small.graphs == sum(1 << (n * (n - 1) // 2) for n in range(1, 7))
    for name in ("haviland", "ali", "theorem1", "theorem3"):
        assert sweep_small.counts[name].equalities > 0
        assert sweep_small.witnesses[name]


def test_sweep_small_witness_content(sweep_small):
    # witnesses are in enumeration order, so the first star labeling on 4 vertices is listed
    wit = set(sweep_small.witnesses["theorem3"])
    stars = {_code(graph_from_mask(4, k)) for k in range(64)
             if sorted(graph_from_mask(4, k).degrees()) == [1, 1, 1, 3]}
    assert wit & stars


def test_sweep_counts_consistent(sweep_small):
    # "evaluated" counts graphs where the bound is defined at all
    assert sweep_small.counts["lemma1_weight"].evaluated == sweep_small.graphs
    for c in sweep_small.counts.values():
        assert c.applicable <= c.evaluated <= sweep_small.graphs
        assert c.satisfied >= c.applicable - c.violations
        assert c.violations == 0 and c.outside_failures == 0


def test_determinism_across_partitions():
    a = verify_labeled([5], jobs=1)
    b = verify_labeled([5], jobs=4, chunk=97)
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)


def test_labeled_bounds():
    with pytest.raises(ValueError):
        verify_labeled([9])


# report classification ---------------------------------------------------------------


def test_outside_hypothesis_failures_are_not_violations():
    k = CHECKS.index("theorem2")
    flags = np.full((2, len(CHECKS)), APPLICABLE | HOLDS | COMPUTABLE, dtype=np.uint8)
    slack = np.zeros((2, len(CHECKS)))
    flags[0, k] = COMPUTABLE            # excluded by hypothesis and fails
    slack[0, k] = -0.5
    flags[1, k] = APPLICABLE | HOLDS | COMPUTABLE | EQUALITY
    rep = SweepReport({})
    _accumulate(rep, slack, flags, lambda i: f"g{i}")
    assert rep.ok and rep.exit_code() == 0
    assert [(f.graph, f.check) for f in rep.outside] == [("g0", "theorem2")]
    assert rep.counts["theorem2"].outside_failures == 1
    assert rep.witnesses["theorem2"] == ["g1"]


def test_violation_sets_exit_code():
    flags = np.full((1, len(CHECKS)), APPLICABLE | COMPUTABLE, dtype=np.uint8)
    rep = SweepReport({})
    _accumulate(rep, np.full((1, len(CHECKS)), -1.0), flags, lambda i: "x")
    assert not rep.ok and rep.exit_code() == 1
    assert len(rep.violations) == len(CHECKS)


def test_json_schema(sweep_small):
    d = sweep_small.to_dict()
    assert {"params", "counts", "violations", "equalityWitnesses"} <= set(d)
    json.dumps(d, allow_nan=False)


# file corpora ------------------------------------------------------------------------


def test_empty_file(tmp_path):
    p = tmp_path / "empty.g6"
    p.write_bytes(b"")
    rep = verify_graph6_file(p)
    assert rep.graphs == 0 and rep.ok


def test_malformed_lines_are_counted(tmp_path):
    p = tmp_path / "mixed.g6"
    p.write_bytes(b"C~\nbad!\nCs\nD\n")
    rep = verify_graph6_file(p)
    assert rep.graphs == 2 and rep.ok
    assert [ln for ln, _ in rep.malformed] == [2, 4]


def test_unreadable_file(tmp_path):
    with pytest.raises(OSError):
        verify_graph6_file(tmp_path / "missing.g6")


def test_mixed_orders_keep_line_numbers():
    items = [(1, make_family("star", [5])), (2, Graph6Error("x", 0)), (3, make_family("path", [3])),
             (4, make_family("star", [5]))]
    rep = verify_graphs(items, {"source": "test"})
    assert rep.graphs == 3 and rep.malformed == [(2, str(items[1][1]))]


def test_csv_rows(k13):
    text = csv_text(lambda w: verify_graphs([(1, k13)], {}, csv_writer=w))
    lines = text.strip().splitlines()
    assert lines[0] == "graph,check,applicable,satisfied,equality,slack"
    assert len(lines) == 1 + len(CHECKS)


def test_large_file_graph(tmp_path):
    g = make_family("join_clique", [40, 3])
    p = tmp_path / "big.g6"
    p.write_bytes(emit_graph6(g) + b"\n")
    rep = verify_graph6_file(p)
    assert rep.graphs == 1 and rep.ok


# relaxation cross-check -------------------------------------------------------------------


def test_pi_cross_check_n4():
    rep = pi_cross_check(4)
    assert rep.ok and rep.skipped > 0
    tight = [t for t in rep.tuples if (t.m, t.delta_lo, t.delta_hi) == (3, 1, 3)]
    assert len(tight) == 1
    t = tight[0]
    assert t.max_s == t.opt == t.bound == 3


def test_pi_cross_check_range():
    with pytest.raises(ValueError):
        pi_cross_check(8)


# equality hunt ------------------------------------------------------------------------------


def test_hunt_ali():
    hits = equality_hunt("ali", ns=range(1, 6))
    codes = {h.graph for h in hits}
    assert _code(make_family("star", [4])) in codes
    assert _code(make_family("semiregular_bipartite", [2, 3])) in codes
    assert all(h.bipartite is not None for h in hits)


def test_hunt_haviland_n4(k13, k3_plus_isolated):
    codes = {h.graph for h in equality_hunt("haviland", ns=[4])}
    assert {_code(k13), _code(k3_plus_isolated)} <= codes


def test_hunt_theorem3_regular_is_empty():
    regular = [make_family("cycle", [n]) for n in range(3, 9)] + [make_family("complete", [n])
                                                                 for n in range(1, 9)]
    assert equality_hunt("theorem3", graphs=regular) == []


def test_hunt_keeps_input_order(k13):
    gs = [make_family("star", [6]), make_family("cycle", [4]), make_family("star", [3]), k13]
    hits = equality_hunt("theorem3", graphs=gs)
    assert [h.graph for h in hits] == [_code(gs[0]), _code(gs[2]), _code(k13)]


def test_hunt_unknown_bound():
    with pytest.raises(ValueError):
        equality_hunt("nope")
