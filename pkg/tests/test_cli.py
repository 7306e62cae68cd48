import io
import json

import numpy as np
import pytest

from grover_pst.cli import EXIT_OK, EXIT_USAGE, run
from grover_pst.graph_core import complete_multipartite, cycle
from grover_pst.walk_operators import build, vertex_state


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def _json(*argv):
    code, text = _run(*argv)
    assert code == EXIT_OK
    return json.loads(text)


@pytest.mark.parametrize(
    "spec, graph, source, target",
    [("cycle:4", cycle(4), 0, 2), ("multipartite:2,2", complete_multipartite(2, 2), 0, 1)],
)
def test_simulate_four_cycle_reaches_antipode(spec, graph, source, target):
    payload = _json("simulate", "--graph", spec, "--x", str(source), "--tau", "2")
    trace = payload["trace"]
    assert [row["t"] for row in trace] == [0, 1, 2]
    assert all(abs(row["norm"] - 1) <= 1e-12 for row in trace)
    expected = vertex_state(build(graph), target).amplitudes.real
    assert np.allclose(trace[-1]["amplitudes"], expected, atol=1e-15)


def test_simulate_k3_arc_state_returns():
    payload = _json("simulate", "--graph", "complete:3", "--arc", "0,1", "--steps", "3")
    trace = payload["trace"]
    assert trace[3]["amplitudes"] == trace[0]["amplitudes"]
    assert trace[1]["amplitudes"] != trace[0]["amplitudes"]


def test_simulate_zero_steps():
    payload = _json("simulate", "--graph", "cycle:5", "--x", "3")
    assert len(payload["trace"]) == 1
    expected = vertex_state(build(cycle(5)), 3).amplitudes.real
    assert np.allclose(payload["trace"][0]["amplitudes"], expected)


def test_simulate_bad_vertex():
    code, _ = _run("simulate", "--graph", "cycle:4", "--x", "9", "--tau", "1")
    assert code == EXIT_USAGE


@pytest.mark.parametrize(
    "spec, x, y, tau, verdict",
    [
        ("multipartite:2,2", "0", "1", "2", True),
        ("multipartite:3,2", "v1(1)", "v2(1)", "6", True),
        ("complete:3", "0", "1", "1", False),
    ],
)
def test_pst(spec, x, y, tau, verdict):
    payload = _json("pst", "--graph", spec, "--x", x, "--y", y, "--tau", tau)
    assert payload["pst"] is verdict
    if verdict:
        assert payload["gamma"] == {"re": 1.0, "im": 0.0}
    else:
        assert payload["gamma"] is None


def test_scan_json_and_csv():
    payload = _json("scan", "--graph", "multipartite:3,2", "--x", "0", "--tau-max", "11")
    assert [(h["target"], h["tau"]) for h in payload["hits"]] == [("v2(1)", 6)]
    assert payload["pruned_count"] == 10
    code, text = _run("scan", "--graph", "multipartite:3,2", "--x", "0", "--tau-max", "11", "--format", "csv")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0].startswith("source,target,tau")
    assert lines[1].startswith("v1(1),v2(1),6,1.0")


def test_period():
    assert _json("period", "--graph", "multipartite:2,3")["period"] == 4
    payload = _json("period", "--graph", "complete:4", "--bound", "30")
    assert payload["period"] == "none up to bound"


def test_support():
    payload = _json("support", "--graph", "multipartite:3,2", "--x", "2")
    assert payload["supports"][0]["eigenvalues"] == [1.0, 0.0, -0.5]
    payload = _json("support", "--graph", "cycle:4")
    assert len(payload["supports"]) == 4


def test_edge_list_file(tmp_path):
    path = tmp_path / "square.txt"
    path.write_text("# C4 with names\na b\nb c\nc d\nd a\n", encoding="utf-8")
    payload = _json("pst", "--graph", str(path), "--x", "a", "--y", "c", "--tau", "2")
    assert payload["pst"] is True
    assert payload["source"] == "a" and payload["target"] == "c"


@pytest.mark.parametrize(
    "argv",
    [
        ["pst", "--graph", "hypercube:3", "--x", "0", "--y", "1", "--tau", "1"],
        ["pst", "--graph", "multipartite:3", "--x", "0", "--y", "1", "--tau", "1"],
        ["pst", "--graph", "/nonexistent/file.txt", "--x", "0", "--y", "1", "--tau", "1"],
        ["pst", "--graph", "cycle:4", "--x", "0", "--tau", "1"],
        ["pst", "--graph", "cycle:4", "--x", "0", "--y", "1", "--tau", "1", "--format", "csv"],
        ["scan", "--graph", "cycle:4", "--x", "0", "--tau-max", "0"],
        ["period", "--graph", "cycle:2"],
        ["period"],
        ["scan", "--graph", "cycle:4", "--x", "0", "--pst-tol", "-1"],
    ],
)
def test_usage_errors(argv):
    code, _ = _run(*argv)
    assert code == EXIT_USAGE


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["bogus"])
    assert exc.value.code == 2


def test_disconnected_edge_list(tmp_path):
    path = tmp_path / "two.txt"
    path.write_text("0 1\n2 3\n", encoding="utf-8")
    code, _ = _run("support", "--graph", str(path))
    assert code == EXIT_USAGE


def test_text_format():
    code, text = _run("scan", "--graph", "multipartite:2,2", "--x", "0", "--tau-max", "3", "--format", "text")
    assert code == EXIT_OK
    assert "v2(1) at tau=2" in text
