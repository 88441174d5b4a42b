import json

import numpy as np
import pytest

from cyclepack.extremal import FamilySpec, generate
from cyclepack.graph import complete_graph, read_edge_list, write_edge_list
from cyclepack.harness import random_graph
from cyclepack.packing import verify_cycle_packing


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in [("g0", generate(FamilySpec("g0", 2))), ("g1", generate(FamilySpec("g1", 2))),
                    ("k6", complete_graph(6)),
                    ("r60", random_graph(np.random.default_rng(0), 60, 0.08))]:
        paths[name] = tmp_path / f"{name}.txt"
        write_edge_list(g, paths[name])
    paths["empty"] = tmp_path / "empty.txt"
    paths["empty"].write_text("0 0\n")
    paths["bad"] = tmp_path / "bad.txt"
    paths["bad"].write_text("3 1\n0 7\n")
    return paths


def test_analyze_g1(cli, files):
    r = cli("analyze", files["g1"], "--k", 2)
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert (out["h_minus_ell"], out["two_core_size"], out["c_exact"]) == (4, 6, 1)


def test_analyze_k6(cli, files):
    out = json.loads(cli("analyze", files["k6"], "--k", 2).stdout)
    assert out["c_exact"] == 2 and out["t"] == 2


def test_analyze_empty(cli, files):
    out = json.loads(cli("analyze", files["empty"], "--k", 2).stdout)
    assert set(out.values()) == {0}
    assert sorted(out) == sorted(["n", "m", "delta", "h", "ell", "h_minus_ell", "two_core_size",
                                  "good_triangle_packing", "t", "c_lower", "c_exact"])


def test_pack_found(cli, files):
    r = cli("pack", files["k6"], "--k", 2)
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["verified"] and len(out["cycles"]) == 2
    assert all(len(c) == 3 for c in out["cycles"])
    assert verify_cycle_packing(read_edge_list(files["k6"]), out["cycles"])


def test_pack_not_exist(cli, files):
    r = cli("pack", files["g0"], "--k", 2, "--exact")
    assert r.returncode == 2
    assert json.loads(r.stdout)["status"] == "not_exist"


def test_pack_exhausted(cli, files):
    r = cli("pack", files["r60"], "--k", 2, "--exact", "--budget", 1)
    assert r.returncode == 3
    assert json.loads(r.stdout)["status"] == "exhausted"


def test_input_errors(cli, files, tmp_path):
    r = cli("pack", files["bad"], "--k", 2)
    assert r.returncode == 1 and f"{files['bad']}:2:" in r.stderr
    assert r.stdout == ""
    assert cli("analyze", tmp_path / "missing.txt", "--k", 2).returncode == 1


def test_generate(cli, tmp_path):
    out = tmp_path / "w.txt"
    r = cli("generate", "wheel", "--n", 7, "-o", out)
    assert r.returncode == 0
    assert read_edge_list(out) == generate(FamilySpec("wheel", n=7))
    r = cli("generate", "g0", "--k", 2)
    assert r.stdout.splitlines()[0] == "6 11"
    assert cli("generate", "g0").returncode == 1


def test_reduce_output(cli, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("5 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    r = cli("reduce", path, "--k", 2)
    assert r.returncode == 0
    assert r.stdout == "R1_ISOLATED vertex=4 k=2 i=1 n=4 m=6\n"


def test_verify_requires_seed(cli):
    r = cli("verify", "CH", "--k", 2, "--max-n", 5)
    assert r.returncode == 2 and "--seed" in r.stderr


def test_verify_unknown_theorem(cli):
    assert cli("verify", "THM9", "--k", 2, "--max-n", 5, "--seed", 1).returncode == 2


def test_verify_report(cli):
    r = cli("verify", "ch", "--k", 2, "--max-n", 6, "--seed", 1)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["theorem"] == "CH" and rep["counterexamples"] == []
    assert rep["graphs_tested"] == sum(1 << (n * (n - 1) // 2) for n in range(7))
    assert "wall time" in r.stderr


def test_verify_exhaustive_limit(cli):
    r = cli("verify", "CH", "--k", 2, "--max-n", 8, "--seed", 1)
    assert r.returncode == 1 and "exhaustive" in r.stderr


def test_hunt(cli):
    r = cli("hunt", "--k", 2, "--min-n", 9, "--max-n", 10, "--samples", 50, "--seed", 2)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["theorem"] == "GAP" and rep["graphs_tested"] == 50
    assert cli("hunt", "--k", 2, "--min-n", 9, "--samples", 5).returncode == 2
    assert cli("hunt", "--k", 2, "--min-n", 40, "--samples", 5, "--seed", 1).returncode == 1
