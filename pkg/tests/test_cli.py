from __future__ import annotations

import csv
import io
import json

import pytest

import sdlab.verify
from sdlab.cli import run
from sdlab.verify import SweepReport
from sdlab.verify.sweep import Finding


def _run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_k4_text():
    code, text = _run("analyze", "--graph6", "C~")
    assert code == 0
    for field in ("n=4", "m=6", "d=3", "s=0", "λ=3", "λ̃=3"):
        assert field in text.splitlines()


def test_analyze_json_star():
    code, text = _run("analyze", "--family", "star", "--params", "4", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["s"] == "3" and d["d"] == "3/2" and d["nPlus"] == 1
    eq = {c["name"] for c in d["checks"] if c["equality"] and c["applicable"]}
    assert {"haviland", "ali", "theorem1", "theorem3"} <= eq


def test_analyze_edges_and_global_format():
    code, text = _run("--format", "csv", "analyze", "--edges", "0 1;1 2")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and rows[0][0] == "check" and len(rows) > 10


def test_analyze_needs_one_source():
    assert _run("analyze")[0] == 2
    assert _run("analyze", "--graph6", "C~", "--family", "star", "--params", "4")[0] == 2


def test_malformed_graph6_exit_and_offset(capsys):
    code, _ = _run("analyze", "--graph6", "C!")
    assert code == 2
    assert "byte 1" in capsys.readouterr().err


def test_opt_pi_json():
    code, text = _run("opt-pi", "--n", "4", "--m", "3", "--delta", "1", "--Delta", "3", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["opt"] == "3" and d["theorem1"] == "3"
    assert [p["nPlus"] for p in d["perNPlus"]] == list(range(5))


def test_opt_pi_rejects_bad_instance():
    assert _run("opt-pi", "--n", "4", "--m", "3", "--delta", "3", "--Delta", "1")[0] == 2


def test_opt_q_star():
    code, text = _run("opt-q", "--n", "4", "--d", "3/2", "--s", "3", "--format", "json")
    d = json.loads(text)
    assert code == 0
    assert d["min"] >= d["theorem3"] - 1e-7
    assert d["min"] == pytest.approx(3 ** 0.5, abs=1e-6)


def test_opt_q_bad_rational():
    assert _run("opt-q", "--n", "4", "--d", "x", "--s", "3")[0] == 2


def test_figure1_csv():
    code, text = _run("figure1", "--delta", "1", "--Delta", "10", "--points", "200", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and rows[0] == ["x", "g"] and len(rows) == 201
    xs = [float(r[0]) for r in rows[1:]]
    assert 1 < min(xs) and max(xs) < 10
    assert all(float(r[1]) <= 1 for r in rows[1:])


def test_figure2_csv():
    code, text = _run("figure2", "--points", "300", "--format", "csv")
    rows = [tuple(map(float, r)) for r in list(csv.reader(io.StringIO(text)))[1:]]
    assert code == 0 and len(rows) == 300
    assert all(0.5 < x <= 0.8 + 1e-15 and h < s for x, h, s in rows)


def test_figure_determinism():
    assert _run("figure2", "--points", "50", "--format", "json") == \
        _run("figure2", "--points", "50", "--format", "json")


def test_extremal():
    code, text = _run("extremal", "--family", "semiregular_bipartite", "--params", "2", "3",
                      "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["s"] == "12/5" and d["n"] == 5


def test_verify_labeled_json():
    code, text = _run("verify", "--n", "1-4", "--format", "json", "--jobs", "1")
    d = json.loads(text)
    assert code == 0 and d["graphs"] == 1 + 2 + 8 + 64 and d["violations"] == []


def test_verify_relaxation():
    code, text = _run("verify", "--n", "4", "--relaxation", "--format", "json")
    d = json.loads(text)
    assert code == 0 and all(t["ok"] for t in d["relaxation"])


def test_verify_file(tmp_path, capsys):
    p = tmp_path / "g.g6"
    p.write_text("C~\nbad!\nDQo\n")
    code, text = _run("verify", "--input", str(p), "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["graphs"] == 2 and d["malformed"][0]["line"] == 2
    assert "line 2" in capsys.readouterr().err


def test_verify_missing_file(tmp_path):
    assert _run("verify", "--input", str(tmp_path / "none.g6"))[0] == 2


def test_verify_csv_output_file(tmp_path):
    dest = tmp_path / "out.csv"
    code, text = _run("verify", "--n", "3", "--format", "csv", "--output", str(dest))
    assert code == 0 and text == ""
    assert dest.read_text().count("\n") == 1 + 8 * len(sdlab.verify.CHECKS)


def test_verify_violation_exit(monkeypatch):
    def fake(ns, **kw):
        rep = SweepReport({"n": list(ns)})
        rep.violations.append(Finding("A_", "haviland", -1.0))
        return rep

    monkeypatch.setattr(sdlab.verify, "verify_labeled", fake)
    assert _run("verify", "--n", "2")[0] == 1


def test_verify_usage_errors():
    assert _run("verify")[0] == 2
    assert _run("verify", "--n", "9")[0] == 2


def test_jobs_from_environment(monkeypatch):
    monkeypatch.setenv("SDLAB_JOBS", "1")
    assert _run("verify", "--n", "3")[0] == 0
    monkeypatch.setenv("SDLAB_JOBS", "many")
    assert _run("verify", "--n", "3")[0] == 2


def test_hunt_ali():
    code, text = _run("hunt", "--bound", "ali", "--n", "4", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["count"] == len(d["witnesses"]) > 0
    assert all("bipartite" in w for w in d["witnesses"])


def test_hunt_unknown_bound():
    assert _run("hunt", "--bound", "nope", "--n", "4")[0] == 2


def test_unknown_command():
    assert _run("frobnicate")[0] == 2
