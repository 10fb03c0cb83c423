import json

import numpy as np
import pytest

from coclosed import COSH, SolveFailedError, build_graph, jsonio
from coclosed.cli import main, parse_potential

from helpers import TWO_TRIANGLE_EDGES


@pytest.fixture
def tt_paths(tmp_path):
    graph = tmp_path / "graph.json"
    field = tmp_path / "field.json"
    jsonio.save(str(graph), {"vertex_count": 4, "edges": [list(e) for e in TWO_TRIANGLE_EDGES]})
    jsonio.save(str(field), {"values": [5.0, 0.0, 0.0, 0.0, 0.0]})
    return str(graph), str(field)


@pytest.fixture
def cactus_path(tmp_path):
    path = tmp_path / "cactus.json"
    edges = [[0, 1], [1, 2], [2, 0], [2, 3], [3, 4], [4, 5], [5, 6], [6, 3]]
    jsonio.save(str(path), {"vertex_count": 7, "edges": edges})
    return str(path)


def test_parse_potential_grammar():
    assert parse_potential("cosh") is COSH
    assert parse_potential("quad").name == "quad"
    assert parse_potential("power:3.5").name == "power:3.5"
    assert parse_potential("coshpow:2").name == "coshpow:2"
    with pytest.raises(ValueError):
        parse_potential("sinh")
    with pytest.raises(ValueError):
        parse_potential("power:abc")
    with pytest.raises(ValueError):
        parse_potential("power:2")


def test_demo_prints_anchors(capsys):
    assert main(["demo"]) == 0
    out = capsys.readouterr().out
    assert "1.356901230272" in out
    assert "a priori bound 2726" in out
    assert "a priori bound 223" in out
    assert "0.30236234" in out
    assert "checks: PASS" in out


def test_decompose_writes_report(tt_paths, tmp_path, capsys):
    graph, field = tt_paths
    out = tmp_path / "report.json"
    assert main(["decompose", "--graph", graph, "--field", field, "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "distance between projections: 0.30236234" in stdout
    assert "certified: yes" in stdout
    data = json.loads(out.read_text())
    assert data["command"] == "decompose"
    assert data["potential"] == "cosh"
    assert data["distance"] == pytest.approx(0.30236234, abs=1e-6)
    assert data["newton"]["a_priori_damped_bound"] == 2726
    assert len(data["nonlinear"]) == 5


def test_decompose_warm_start_flag(tt_paths, capsys):
    graph, field = tt_paths
    assert main(["decompose", "--graph", graph, "--field", field, "--warm-start"]) == 0
    assert "damped" in capsys.readouterr().out


def test_cactus_verdict_exit_codes(tt_paths, cactus_path, capsys):
    graph, _ = tt_paths
    assert main(["cactus", "--graph", graph]) == 3
    out = capsys.readouterr().out
    assert "cactus: no" in out
    assert "witness field: [1, 1, -2, -1, -1]" in out
    assert main(["cactus", "--graph", cactus_path]) == 0
    out = capsys.readouterr().out
    assert "cactus: yes" in out
    assert "beta_1 = 2" in out


def test_cactus_writes_report_even_on_exit_3(tt_paths, tmp_path):
    graph, _ = tt_paths
    out = tmp_path / "cactus.json"
    assert main(["cactus", "--graph", graph, "--out", str(out)]) == 3
    data = json.loads(out.read_text())
    assert data["is_cactus"] is False
    assert data["witness"]["split_vertex"] == 0


def test_verify_cactus_pass(cactus_path, capsys):
    assert main(["verify", "--graph", cactus_path, "--trials", "4", "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "verdict: cactus" in out
    assert "criterion: PASS" in out


def test_verify_witness_pass(tt_paths, capsys):
    graph, _ = tt_paths
    assert main(["verify", "--graph", graph, "--potential", "coshpow:2"]) == 0
    out = capsys.readouterr().out
    assert "verdict: not a cactus" in out
    assert "criterion: PASS" in out


def test_verify_quadratic_not_applicable(tt_paths, capsys):
    graph, _ = tt_paths
    assert main(["verify", "--graph", graph, "--potential", "quad"]) == 0
    out = capsys.readouterr().out
    assert "NOT APPLICABLE" in out
    assert "admissible: no" in out


def test_verify_violation_exits_4(tt_paths, capsys):
    graph, _ = tt_paths
    assert main(["verify", "--graph", graph, "--tol", "1.0"]) == 4
    assert "criterion: FAIL" in capsys.readouterr().err


def test_verify_reports_are_byte_identical(cactus_path, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main([
            "verify", "--graph", cactus_path, "--trials", "3",
            "--seed", "9", "--out", str(path),
        ]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_file_error_exits_1(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["cactus", "--graph", missing]) == 1
    assert "error" in capsys.readouterr().err


def test_malformed_json_exits_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["cactus", "--graph", str(bad)]) == 1


def test_wrong_field_length_exits_1(tt_paths, tmp_path):
    graph, _ = tt_paths
    short = tmp_path / "short.json"
    jsonio.save(str(short), {"values": [1.0, 2.0]})
    assert main(["decompose", "--graph", graph, "--field", str(short)]) == 1


def test_bad_potential_exits_1(tt_paths):
    graph, field = tt_paths
    assert main(["decompose", "--graph", graph, "--field", field, "--potential", "power:2"]) == 1
    assert main(["verify", "--graph", graph, "--potential", "mystery"]) == 1


def test_disconnected_graph_exits_1(tmp_path):
    path = tmp_path / "disc.json"
    jsonio.save(str(path), {"vertex_count": 4, "edges": [[0, 1], [2, 3]]})
    assert main(["cactus", "--graph", str(path)]) == 1


def test_solver_failure_exits_2(tt_paths, monkeypatch, capsys):
    graph, field = tt_paths

    def boom(*args, **kwargs):
        raise SolveFailedError("synthetic failure")

    monkeypatch.setattr("coclosed.cli.project", boom)
    assert main(["decompose", "--graph", graph, "--field", field]) == 2
    assert "solver error" in capsys.readouterr().err


def test_demo_check_failure_exits_5(monkeypatch, capsys):
    monkeypatch.setattr("coclosed.cli._demo_stationarity_root", lambda: 1.0)
    assert main(["demo"]) == 5
    assert "check failed" in capsys.readouterr().err


def test_large_graph_warning(tmp_path, capsys):
    n = 2001
    path = tmp_path / "path.json"
    jsonio.save(
        str(path),
        {"vertex_count": n, "edges": [[i, i + 1] for i in range(n - 1)]},
    )
    assert main(["cactus", "--graph", str(path)]) == 0
    assert "warning" in capsys.readouterr().err


def test_stdout_is_reproducible(tt_paths, capsys):
    graph, field = tt_paths
    args = ["decompose", "--graph", graph, "--field", field, "--potential", "power:4"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
