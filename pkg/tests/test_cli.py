import json
import subprocess
import sys

import pytest

from kdist.cli import main, parse_range
from kdist.families import double_broom
from kdist.graph import Graph, is_isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_then_gk(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "double-broom", "--n", "7", "--k", "3")
    assert code == 0
    g = Graph.from_graph6(out.strip().encode())
    assert is_isomorphic(g, double_broom(7, 3))
    f = tmp_path / "g.g6"
    f.write_text(out)
    code, out, _ = run(capsys, "gk", "--k", "3", "--input", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["e_gk"] == 6 and rep["p"] == 2
    assert rep["tool_version"] and rep["config"]["subcommand"] == "gk"


def test_gk_on_k2(capsys):
    code, out, _ = run(capsys, "gk", "--k", "3", "A_")
    assert code == 0 and json.loads(out)["e_gk"] == 0


def test_construct_dot(capsys):
    code, out, _ = run(capsys, "construct", "t-broom", "--k", "5", "--leaves", "2,2", "--format", "dot")
    assert code == 0 and out.startswith("graph G {") and "0 -- 1;" in out


def test_construct_missing_parameter(capsys):
    code, _, err = run(capsys, "construct", "double-broom", "--n", "7")
    assert code == 1 and "--k" in err


def test_verify_k2_bound_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "k2-bound", "--n", "6..9")
    rep = json.loads(out)
    assert code == 0
    assert rep["report"]["verdict"] == "consistent"
    assert [c["params"]["n"] for c in rep["report"]["cells"]] == [6, 7, 8, 9]


def test_verify_mismatch_exit_two(capsys):
    code, out, _ = run(capsys, "verify", "triangle-free", "--k", "3", "--n", "7", "--format", "csv")
    assert code == 2
    assert "triangle-free,7,3,2,7,6,False,1" in out


def test_search_json_and_csv(capsys):
    code, out, _ = run(capsys, "search", "--n", "7", "--k", "3", "--cap", "2")
    rep = json.loads(out)["report"]
    assert code == 0 and rep["max_e_gk"] == 7
    code, out, _ = run(capsys, "search", "--n", "7", "--k", "3", "--cap", "2", "--format", "csv")
    assert out.splitlines()[1].split(",")[5] == "7"


def test_search_same_config_same_bytes(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "search", "--n", "6", "--k", "3", "--scope", "all")
        d = json.loads(out)
        d["report"].pop("elapsed_seconds")
        outs.append(json.dumps(d, sort_keys=True))
    assert outs[0] == outs[1]


def test_bounds_batch(capsys, tmp_path):
    f = tmp_path / "in.g6"
    code, _, _ = run(capsys, "enumerate", "connected", "--n", "5", "--output", str(f))
    assert code == 0 and len(f.read_text().split()) == 21
    code, out, _ = run(capsys, "bounds", "--input", str(f), "--k", "2")
    lines = [json.loads(x) for x in out.splitlines()]
    assert len(lines) == 21 and all(l["k"] == 2 for l in lines)


def test_enumerate_trees_with_header(capsys):
    code, out, _ = run(capsys, "enumerate", "trees", "--n", "7", "--header")
    assert code == 0 and out.startswith(">>graph6<<")


def test_bad_input(capsys, tmp_path):
    f = tmp_path / "bad.g6"
    f.write_text("A_\nA\n")
    code, _, err = run(capsys, "gk", "--k", "2", "--input", str(f))
    assert code == 1 and "line 2" in err


def test_bad_shard(capsys):
    code, _, err = run(capsys, "search", "--n", "6", "--k", "3", "--shard", "3/2")
    assert code == 1


def test_parse_range():
    assert parse_range("6..9") == [6, 7, 8, 9]
    assert parse_range("5,7") == [5, 7]
    with pytest.raises(ValueError):
        parse_range("9..6")


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("KDIST_THREADS", "3")
    _, out, _ = run(capsys, "search", "--n", "6", "--k", "3")
    assert json.loads(out)["config"]["threads"] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "kdist", "construct", "cycle", "--n", "5"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)]).to_graph6().decode()
