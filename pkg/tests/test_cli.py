import json
import subprocess
import sys

import pytest

from vmlab.cli import main
from vmlab.core import Graph, complete_graph, cycle_graph, is_isomorphic, path_graph
from vmlab.flips import Flip


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(g.to_text())
    return str(p)


def test_gen_families(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "half-graph", "3")
    assert code == 0 and Graph.from_text(out).order == 6
    _, out, _ = run(capsys, "gen", "comparability-grid", "2")
    g = Graph.from_text(out)
    assert g.order == 4 and g.size == 5
    _, out, _ = run(capsys, "gen", "star-crossing", "1", "1")
    assert is_isomorphic(Graph.from_text(out), path_graph(3))
    target = tmp_path / "h.txt"
    assert run(capsys, "gen", "half-graph", "2", "--out", str(target))[0] == 0
    labels = json.loads((tmp_path / "h.txt.labels.json").read_text())
    assert labels["0"] == "a1" and labels["3"] == "b2"
    _, out, _ = run(capsys, "gen", "ordered-matching", "1,2", "2,1", "--format", "dot")
    assert out.startswith("graph G {")


def test_gen_bad_params(capsys):
    code, _, err = run(capsys, "gen", "half-graph", "0")
    assert code == 2 and "DomainError" in err
    assert run(capsys, "gen", "half-graph")[0] == 2


def test_op_commands(capsys, tmp_path):
    k3 = write(tmp_path, "k3.txt", complete_graph(range(3)))
    code, out, _ = run(capsys, "op", "lc", k3, "0")
    assert code == 0 and Graph.from_text(out) == Graph(range(3), [(0, 1), (0, 2)])
    flip = tmp_path / "f.txt"
    flip.write_text(Flip(1, {0: 1, 1: 1, 2: 1}, frozenset({(1, 1)})).to_text())
    _, out, _ = run(capsys, "op", "flip", k3, str(flip))
    assert Graph.from_text(out).size == 0
    code, _, err = run(capsys, "op", "lcset", k3, "0", "1")
    assert code == 2 and "FaultyComplementation" in err
    p4 = write(tmp_path, "p4.txt", path_graph(4))
    _, out, _ = run(capsys, "op", "pivot", p4, "1", "2")
    assert Graph.from_text(out).order == 4


def test_contains(capsys, tmp_path):
    c6, c3 = write(tmp_path, "c6.txt", cycle_graph(6)), write(tmp_path, "c3.txt", cycle_graph(3))
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "contains", c6, c3, "--depth", "1", "--out", str(w))
    assert code == 0 and "found at depth 1" in out
    code, out, _ = run(capsys, "op", "witness", c6, str(w))
    assert is_isomorphic(Graph.from_text(out), cycle_graph(3))
    code, out, _ = run(capsys, "contains", c3, c6, "--format", "json-witness")
    assert code == 1 and json.loads(out)["found"] is False
    big = write(tmp_path, "big.txt", path_graph(12))
    code, _, err = run(capsys, "contains", big, c3)
    assert code == 2 and "CapacityError" in err


def test_env_overrides(capsys, tmp_path, monkeypatch):
    big = write(tmp_path, "big.txt", path_graph(11))
    p2 = write(tmp_path, "p2.txt", path_graph(2))
    monkeypatch.setenv("VMLAB_CAP_N", "12")
    assert run(capsys, "contains", big, p2, "--depth", "0")[0] == 0
    assert run(capsys, "contains", big, p2, "--depth", "0", "--cap-n", "10")[0] == 2
    monkeypatch.setenv("VMLAB_TRIALS", "3")
    _, out, _ = run(capsys, "verify", "pivot")
    assert "trials 3" in out


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "example-si", "--n", "3")
    assert code == 0 and "0 failures" in out
    code, out, _ = run(capsys, "verify", "unsub", "--r", "7", "--trials", "10")
    assert code == 0 and "max observed 3" in out
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "flip-involution", "--seed", "3", "--trials", "50", "--report", str(report))
    data = json.loads(report.read_text())
    assert code == 0 and data["ok"] and data["seed"] == 3 and data["command"][1] == "verify"
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_verify_reports_counterexamples(capsys):
    code, out, _ = run(capsys, "verify", "commute0", "--seed", "7", "--trials", "200")
    assert code == 1 and "violations" in out


def test_eval(capsys, tmp_path):
    h = tmp_path / "h.txt"
    main(["gen", "half-graph", "3", "--out", str(h)])
    capsys.readouterr()
    code, out, _ = run(capsys, "eval", str(h), "exists y E(x, y)", "--assign", "x=0")
    assert code == 0 and out.strip() == "true"
    _, out, _ = run(capsys, "eval", str(h), "E(x, y)", "--ladder", "3")
    assert out.startswith("ladder length 3")
    _, out, _ = run(capsys, "eval", str(h), "P(x)", "--predicate", "P=0,1", "--assign", "x=2")
    assert out.strip() == "false"
    code, _, err = run(capsys, "eval", str(h), "E(x,")
    assert code == 2 and "FormulaSyntaxError" in err
    ps = tmp_path / "ps.txt"
    main(["gen", "power-split-interval", "2", "--out", str(ps)])
    capsys.readouterr()
    code, out, _ = run(capsys, "eval", str(ps), "phi(x, y)", "--library", "split_interval",
                       "--independence", "2", "--disjoint")
    assert code == 0 and out.startswith("a = ")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "vmlab", "gen", "path", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and Graph.from_text(res.stdout) == path_graph(3)
