import json

import pytest

from approxpls.cli import main
from approxpls.graph import check_metric, parse_graph


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_gen_ring_and_metric(work):
    assert main(["gen", "ring", "--n", "7", "-o", "ring7.g"]) == 0
    g = parse_graph((work / "ring7.g").read_text())
    assert (g.n, g.m) == (7, 7)
    assert main(["gen", "metric", "--n", "6", "--seed", "3", "-o", "m.g"]) == 0
    assert check_metric(parse_graph((work / "m.g").read_text()))


def test_gen_reproducible(work):
    main(["gen", "bipartite", "--n", "8", "--p", "0.5", "--seed", "1", "-o", "a.g"])
    main(["gen", "bipartite", "--n", "8", "--p", "0.5", "--seed", "1", "-o", "b.g"])
    assert (work / "a.g").read_text() == (work / "b.g").read_text()


def test_gen_infeasible_params(work):
    assert main(["gen", "ring", "--n", "2"]) == 2


def test_run_edge_cover_ring(work, capsys):
    main(["gen", "ring", "--n", "7", "-o", "ring7.g", "--solve", "edge_cover", "--solve-out", "cover.out"])
    capsys.readouterr()
    assert main(["run", "edge-cover-apls", "--kappa", "2", "ring7.g", "cover.out"]) == 0
    rep = _json(capsys)
    assert rep["accept"] and rep["proof_size"] == 2 and rep["family"] == "yes"


def test_run_maxcut_triangle(work, capsys):
    (work / "tri.g").write_text("graph tri\nnode 0\nnode 1\nnode 2\nedge 0 1\nedge 1 2\nedge 0 2\n")
    (work / "cut.out").write_text("out 0 8/1\nout 1 0/1\nout 2 0/1\n")
    assert main(["run", "maxcut-apls", "tri.g", "cut.out"]) == 0
    rep = _json(capsys)
    assert rep["accept"] and rep["proof_size"] == 1
    assert set(rep["phi"].values()) == {True}


def test_run_unknown_scheme_and_missing_flag(work, capsys):
    (work / "tri.g").write_text("graph tri\nnode 0\nnode 1\nnode 2\nedge 0 1\nedge 1 2\nedge 0 2\n")
    assert main(["run", "no-such", "tri.g"]) == 2
    assert "unknown scheme" in capsys.readouterr().err
    assert main(["run", "edge-cover-apls", "tri.g"]) == 2
    assert main(["run", "maxcut-apls", "tri.g"]) == 2          # outside the universe
    assert main(["bogus"]) == 2


def test_run_rejects_no_instance(work, capsys):
    (work / "p3.g").write_text("graph p3 W=3\nnode 0\nnode 1\nnode 2\nedge 0 1 w=1\nedge 1 2 w=3\n")
    (work / "cut.out").write_text("out 0 8/1\nout 1 0/1\nout 2 0/1\n")
    assert main(["run", "maxcut-apls", "p3.g", "cut.out"]) == 1
    rep = _json(capsys)
    assert rep["family"] == "no" and not rep["accept"] and rep["prover_refused"]


def test_fuzz_no_instance(work, capsys):
    (work / "p3.g").write_text("graph p3 W=3\nnode 0\nnode 1\nnode 2\nedge 0 1 w=1\nedge 1 2 w=3\n")
    (work / "cut.out").write_text("out 0 8/1\nout 1 0/1\nout 2 0/1\n")
    assert main(["fuzz", "maxcut-apls", "p3.g", "cut.out", "--trials", "10000", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    rep = json.loads(first)
    assert rep["accepts"] == 0 and rep["family"] == "no" and rep["trials"] >= 10_000
    main(["fuzz", "maxcut-apls", "p3.g", "cut.out", "--trials", "10000", "--seed", "7"])
    assert capsys.readouterr().out == first
    assert main(["fuzz", "maxcut-apls", "p3.g", "cut.out", "--exhaustive", "--max-bits", "1"]) == 0
    assert _json(capsys)["accepts"] == 0


def test_fuzz_gap_and_yes(work, capsys):
    main(["gen", "ring", "--n", "5", "-o", "r5.g"])
    (work / "four.out").write_text("out 0 8/2\nout 1 c/2\nout 2 c/2\nout 3 c/2\nout 4 8/2\n")
    (work / "opt.out").write_text("out 0 8/2\nout 1 8/2\nout 2 4/2\nout 3 c/2\nout 4 8/2\n")
    capsys.readouterr()
    assert main(["fuzz", "edge-cover-apls", "--kappa", "2", "r5.g", "four.out", "--trials", "50"]) == 0
    err = capsys.readouterr().err
    assert "gap: informational" in err
    main(["fuzz", "edge-cover-apls", "--kappa", "2", "r5.g", "opt.out", "--trials", "50"])
    assert "warning" in capsys.readouterr().err


def test_alpha_flag(work, capsys):
    main(["gen", "ring", "--n", "5", "-o", "r5.g"])
    (work / "four.out").write_text("out 0 8/2\nout 1 c/2\nout 2 c/2\nout 3 c/2\nout 4 8/2\n")
    capsys.readouterr()
    assert main(["fuzz", "edge-cover-apls", "--kappa", "2", "--alpha", "1", "r5.g", "four.out"]) == 2
    assert "below the scheme ratio" in capsys.readouterr().err
    assert main(["fuzz", "edge-cover-apls", "--kappa", "2", "--alpha", "5/4", "r5.g", "four.out"]) == 2
    capsys.readouterr()
    assert main(["fuzz", "edge-cover-apls", "--kappa", "2", "--alpha", "3", "r5.g", "four.out",
                 "--trials", "50"]) == 0
    assert "gap: informational" in capsys.readouterr().err
    assert main(["fuzz", "edge-cover-apls", "--kappa", "2", "--alpha", "x", "r5.g", "four.out"]) == 2


def test_suite_partial_and_corrupted(work, capsys):
    args = ["suite", "--filter", "edge-cover-bipartite", "--quick"]
    assert main(args + ["--report", "a.json"]) == 0
    assert main(args + ["--report", "b.json"]) == 0
    a = (work / "a.json").read_text()
    assert a == (work / "b.json").read_text()
    rep = json.loads(a)
    assert set(rep["schemes"]) <= {"edge-cover-bipartite-pls", "edge-cover-bipartite-dpls"}
    assert {c["status"] for c in rep["criteria"]} <= {"pass", "skipped"}
    assert main(args + ["--corrupt", "edge-cover-bipartite-pls", "--report", "c.json"]) == 1
    assert not json.loads((work / "c.json").read_text())["passed"]
