from __future__ import annotations

import csv
import io
import json

import pytest

from nilhoro.cli import main


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dist(capsys):
    code, out, _ = call(capsys, "dist", "--group", "h3", "--element", "0,0,1")
    assert code == 0
    assert json.loads(out) == {"case": "I1", "d": 4, "element": {"x": 0, "y": 0, "z": 1}, "group": "h3"}
    code, out, _ = call(capsys, "dist", "--element", "1,0,4", "--oracle", "--radius", "8")
    assert json.loads(out)["oracle"] == json.loads(out)["d"] == 7
    code, out, _ = call(capsys, "dist", "--element", "0,0,9", "--oracle", "--radius", "8")
    assert json.loads(out)["oracle"] is None and json.loads(out)["d"] == 12


def test_dist_other_groups(capsys):
    code, out, _ = call(capsys, "dist", "--group", "example1", "--element", "1,0,0,0,0")
    assert code == 0 and json.loads(out)["d"] == 8
    code, out, _ = call(capsys, "dist", "--group", "z3", "--element", "3,-2,1")
    assert json.loads(out)["d"] == 6


def test_ball_formats(capsys):
    code, out, _ = call(capsys, "ball", "--radius", "2")
    data = json.loads(out)
    assert code == 0 and data["size"] == 17 and data["elements"][0] == {"d": 0, "x": 0, "y": 0, "z": 0}
    code, out, _ = call(capsys, "ball", "--radius", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "y", "z", "distance"] and len(rows) == 18


def test_geodesic(capsys):
    code, out, _ = call(capsys, "geodesic", "--group", "h3", "--word", "abab", "--check")
    assert code == 0 and json.loads(out)["geodesic"] is True
    code, out, _ = call(capsys, "geodesic", "--word", "aA", "--check")
    assert code == 1 and json.loads(out)["geodesic"] is False
    code, out, _ = call(capsys, "geodesic", "--word", "aA")
    assert code == 0
    code, out, _ = call(capsys, "geodesic", "--element", "0,0,1", "--list")
    assert json.loads(out)["words"] == ["ABab", "BabA", "abAB", "bABa"]
    code, out, _ = call(capsys, "geodesic", "--element", "0,0,1", "--cap", "1")
    assert json.loads(out)["capped"] is True and json.loads(out)["count"] == 1


def test_horo(capsys):
    code, out, _ = call(capsys, "horo", "eval", "--point", "corner:++", "--element", "1,2,7")
    assert code == 0 and json.loads(out)["value"] == -3
    code, out, _ = call(capsys, "horo", "act", "--word", "b", "--point", "a:+,0,0")
    assert json.loads(out)["image"] == "a:+,0,1"
    code, out, _ = call(capsys, "horo", "act", "--element", "0,0,0", "--point", "b:-,1,2")
    assert json.loads(out)["image"] == "b:-,1,2"
    code, out, _ = call(capsys, "horo", "limit", "--path", "gamma:+,2,-1")
    data = json.loads(out)
    assert code == 0 and data["limit"] == "a:+,2,-1" and data["stabilised"] is True
    code, out, _ = call(capsys, "horo", "limit", "--path", "word:abba", "--window", "3")
    assert json.loads(out)["T"] == 12


def test_horo_limit_failure_exit_code(capsys):
    code, out, _ = call(capsys, "horo", "limit", "--path", "gamma:+,0,0", "--t-max", "2")
    assert code == 1 and json.loads(out)["stabilised"] is False


def test_polytope(capsys):
    code, out, _ = call(capsys, "polytope", "--group", "h3")
    data = json.loads(out)
    assert code == 0 and len(data["facets"]) == 4
    assert {tuple(f["alphabet"]) for f in data["facets"]} == {("A", "B"), ("A", "b"), ("B", "a"), ("a", "b")}
    assert [[1, 1], [1, 1]] in [f["functional"] for f in data["facets"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["dist", "--group", "q7", "--element", "1"],
        ["dist", "--element", "1,2"],
        ["horo", "eval", "--point", "corner:+x", "--element", "1,2,3"],
        ["horo", "limit", "--path", "delta:+,0,0"],
        ["geodesic", "--word", "xyz"],
        ["geodesic"],
        ["horo", "act", "--point", "corner:++"],
        ["polytope", "--group", "h4"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ball"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_budget_exit_1(capsys):
    code, out, err = call(capsys, "ball", "--radius", "30")
    assert code == 1 and "budget" in err


def test_verify_metric(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "metric", "--radius", "10")
    data = json.loads(out)
    assert code == 0 and data["passed"] is True
    assert all(c["status"] == "pass" for c in data["checks"])


def test_verify_failure_exit_1(capsys):
    # a probe budget too small for convergence is a genuine failure, not a crash
    code, out, _ = call(capsys, "verify", "--suite", "boundary", "--t-max", "3")
    data = json.loads(out)
    assert code == 1 and data["passed"] is False


def test_output_is_byte_identical(capsys):
    _, first, _ = call(capsys, "verify", "--suite", "facets")
    _, second, _ = call(capsys, "verify", "--suite", "facets")
    assert first == second


def test_module_entry_point(run_cli):
    code, out, _ = run_cli("dist", "--element", "0,0,1")
    assert code == 0 and out["d"] == 4
    code, out, err = run_cli("dist", "--group", "nope", "--element", "1")
    assert code == 2 and "unknown group" in err
