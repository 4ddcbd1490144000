from __future__ import annotations

import csv
import io
import subprocess
import sys

import pytest

from overlapnum.cli import CSV_COLUMNS, batch_report, main, parse_graph_text
from overlapnum.constructions import parse_certificate
from overlapnum.families import cycle, enum_trees, gen_quadrangulation, path
from overlapnum.graph import Graph, format_edge_list, format_graph6
from overlapnum.model import parse_rep, verify
from overlapnum.planar import PlaneGraph, format_rotation
from overlapnum.trees import skeleton


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def test_input_formats_are_detected():
    C5 = cycle(5)
    assert parse_graph_text(format_edge_list(C5)) == C5
    assert parse_graph_text(format_graph6(C5)) == C5
    PG = gen_quadrangulation(8)
    assert isinstance(parse_graph_text(format_rotation(PG)), PlaneGraph)


def test_bounds_on_c6_is_pinned(capsys, write):
    code, out, _ = run(capsys, "bounds", write("c6.txt", format_edge_list(cycle(6))))
    assert code == 0
    assert "phi lower 5 triangle-free-no-star-cutset" in out
    assert "pinned phi = 5" in out


def test_bounds_reports_exact_and_pure(capsys, write):
    G = Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    code, out, _ = run(capsys, "bounds", write("g.txt", format_edge_list(G)), "--pure", "--witness")
    assert code == 0
    assert "pol upper" in out and "pinned" in out


def test_tree_rep_on_p4(capsys, write, tmp_path):
    out_path = tmp_path / "rep.txt"
    code, _, _ = run(capsys, "tree-rep", write("p4.txt", format_edge_list(path(4))), "-o", out_path)
    assert code == 0
    rep = parse_rep(out_path.read_text())
    assert rep.t == 4 and verify(path(4), rep).ok


def test_skeleton_command(capsys, write):
    code, out, _ = run(capsys, "skeleton", write("p5.txt", format_edge_list(path(5))))
    assert code == 0 and out.startswith("size 5")


def test_decomp_then_verify_pure(capsys, write, tmp_path):
    g = write("c5.txt", format_edge_list(cycle(5)))
    cert_path = tmp_path / "cert.txt"
    assert run(capsys, "construct", "decomp", g, "-o", cert_path)[0] == 0
    cert = parse_certificate(cert_path.read_text())
    assert cert.quantity == "pol" and cert.value == 5
    code, out, _ = run(capsys, "verify", g, cert_path, "--kind", "pure")
    assert code == 0 and out.startswith("ok pure size 5")


def test_verify_failure_exit_code(capsys, write):
    g = write("p3.txt", format_edge_list(path(3)))
    r = write("bad.txt", "3\n0: 1 2\n1: 2 3\n2: 1 2 3\n")
    code, out, _ = run(capsys, "verify", g, r)
    assert code == 3 and "FAILED 1 violations" in out


@pytest.mark.parametrize("method, extra", [("edge-bound", []), ("edge-bound", ["--edge", 0, 1]), ("small", []), ("planar", [])])
def test_construct_methods(capsys, write, method, extra):
    G = cycle(5) if method != "planar" else gen_quadrangulation(8).graph
    code, out, _ = run(capsys, "construct", method, write("g.txt", format_edge_list(G)), *extra)
    assert code == 0
    assert parse_certificate(out).check(G)


def test_construct_clique(capsys):
    code, out, _ = run(capsys, "construct", "clique", 10)
    assert code == 0 and parse_certificate(out).value == 5


def test_decompose_planar(capsys, write):
    code, out, _ = run(capsys, "decompose-planar", write("q.txt", format_rotation(gen_quadrangulation(8))))
    assert code == 0 and out.startswith("parts 12 edges 12 triangles 0")


def test_exact_command(capsys, write):
    g = write("c6.txt", format_edge_list(cycle(6)))
    code, out, _ = run(capsys, "exact", g)
    assert code == 0 and out.startswith("phi 5 status exact")
    code, out, _ = run(capsys, "exact", g, "--quantity", "pol")
    assert code == 0 and out.startswith("pol 6 status exact")


def test_budget_exit_code(capsys, write, monkeypatch):
    g = write("c7.txt", format_edge_list(cycle(7)))
    assert run(capsys, "exact", g, "--node-limit", 5)[0] == 4
    monkeypatch.setenv("OVERLAP_NODE_BUDGET", "5")
    assert run(capsys, "exact", g)[0] == 4


def test_generate_round_trips(capsys):
    code, out, _ = run(capsys, "generate", "quadrangulation", 12)
    assert code == 0 and parse_graph_text(out).n == 12
    code, out, _ = run(capsys, "generate", "spider", 0, "--params", 2, 2, 2)
    assert code == 0 and skeleton(parse_graph_text(out)).size == 7


def test_parse_error_exit_code(capsys, write):
    assert run(capsys, "bounds", write("bad.txt", "3 2\n0 1\n"))[0] == 2
    assert run(capsys, "bounds", "/nonexistent/file")[0] == 2


def test_precondition_exit_code(capsys, write):
    code, _, err = run(capsys, "skeleton", write("c4.txt", format_edge_list(cycle(4))))
    assert code == 5 and "precondition" in err
    assert run(capsys, "construct", "edge-bound", write("p4.txt", format_edge_list(path(4))))[0] == 5


def test_seed_is_rejected(capsys, write):
    code, _, err = run(capsys, "--seed", 1, "bounds", write("c6.txt", format_edge_list(cycle(6))))
    assert code == 2 and "--seed" in err


def test_batch_on_trees(tmp_path):
    for i, T in enumerate(enum_trees(6)):
        (tmp_path / f"tree{i:02d}.txt").write_text(format_edge_list(T))
    got = rows(batch_report(str(tmp_path)))
    assert len(got) == 6
    for row, T in zip(got, enum_trees(6)):
        assert row["pinned"] == "yes" and int(row["upper"]) == skeleton(T).size


def test_batch_on_quadrangulations(tmp_path):
    for n in (8, 12, 16):
        (tmp_path / f"q{n:02d}.txt").write_text(format_rotation(gen_quadrangulation(n)))
    got = rows(batch_report(str(tmp_path)))
    assert [(int(r["n"]), r["pinned"], int(r["upper"])) for r in got] == [(8, "yes", 11), (12, "yes", 19), (16, "yes", 27)]


def test_batch_is_deterministic_and_isolates_errors(tmp_path):
    (tmp_path / "a.txt").write_text(format_edge_list(cycle(6)))
    (tmp_path / "b.txt").write_text("not a graph at all\n")
    (tmp_path / "c.txt").write_text(format_graph6(path(4)))
    first = batch_report(str(tmp_path))
    assert first == batch_report(str(tmp_path)) == batch_report(str(tmp_path), jobs=2)
    got = rows(first)
    assert [r["name"] for r in got] == ["a.txt", "b.txt", "c.txt"]
    assert got[1]["lower_rule"] == "error:ParseError"
    assert got[2]["pinned"] == "yes"


def test_empty_directory(capsys, tmp_path):
    code, out, _ = run(capsys, "batch", tmp_path)
    assert code == 0 and out == ",".join(CSV_COLUMNS) + "\n"


def test_batch_on_missing_directory(capsys, tmp_path):
    assert run(capsys, "batch", tmp_path / "nope")[0] == 2


def test_module_entry_point(tmp_path):
    g = tmp_path / "c6.txt"
    g.write_text(format_edge_list(cycle(6)))
    proc = subprocess.run([sys.executable, "-m", "overlapnum", "bounds", str(g)], capture_output=True, text=True)
    assert proc.returncode == 0 and "pinned phi = 5" in proc.stdout
