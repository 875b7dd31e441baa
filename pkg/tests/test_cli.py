import csv
import io
import json
import subprocess
import sys

import pytest

from laplaceq import cli
from laplaceq.errors import NumericalFailure
from laplaceq.graphs import serialize_graph, star_mlike, wheel


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = cli.run(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_spectrum_example():
    code, out, _ = call("spectrum", "--family", "star_mlike", "--n", "7", "--m", "3", "--exact")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "mode": "exact",
        "entries": [
            {"value": "7/18", "multiplicity": 1},
            {"value": "1/6", "multiplicity": 3},
            {"value": "1/18", "multiplicity": 2},
            {"value": "0/1", "multiplicity": 1},
        ],
    }


def test_locc_example():
    code, out, _ = call("locc", "--a", "star:4", "--b", "star_like:4")
    doc = json.loads(out)
    assert code == 0 and doc["a_to_b"] is False and doc["b_to_a"] is False


def test_counterexample_example():
    code, out, _ = call("counterexample")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["summary"]["pass"] == 4 and rep["summary"]["fail"] == 0


def test_entropy_and_csv():
    code, out, _ = call("entropy", "--family", "star:4")
    assert code == 0 and json.loads(out)["bits"] == pytest.approx(1.25162916738782, abs=1e-11)
    code, out, _ = call("spectrum", "--family", "star:4", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["2/3", "1/6", "0/1"]


def test_verify_output(tmp_path):
    target = tmp_path / "t6.json"
    code, out, _ = call("verify", "--theorem", "T6", "--n-max", "8", "--out", str(target))
    assert code == 0 and out == ""
    reps = json.loads(target.read_text())["reports"]
    fails = [r for rep in reps for r in rep["records"] if r["result"] == "fail-against-prose"]
    assert [r["n"] for r in fails] == [4]


def test_weights_and_explore():
    code, out, _ = call("weights", "--phases", "pi,pi,0")
    assert code == 0 and json.loads(out)["satisfied"] is True
    code, out, _ = call("weights", "--grid-steps", "24")
    assert json.loads(out)["grid_solutions_outside_0_pi"] == []
    code, out, _ = call("explore", "--n", "5", "--conjecture", "2", "--csv")
    assert code == 0 and out.startswith("conjecture,n,reading")


def test_graph_round_trip(tmp_path):
    # numeric spectrum of a graph file agrees with the exact family spectrum
    path = tmp_path / "g.json"
    path.write_text(serialize_graph(star_mlike(9, 3)))
    _, num, _ = call("spectrum", "--graph", str(path), "--numeric")
    _, exact, _ = call("spectrum", "--family", "star_mlike", "--n", "9", "--m", "3", "--exact")
    from fractions import Fraction

    a = json.loads(num)["entries"]
    b = json.loads(exact)["entries"]
    assert [e["multiplicity"] for e in a] == [e["multiplicity"] for e in b]
    for x, y in zip(a, b):
        assert abs(x["value"] - float(Fraction(y["value"]))) <= 1e-9


def test_graph_from_stdin_exact():
    code, out, _ = call("spectrum", "--graph", "-", "--exact", stdin=serialize_graph(wheel(7)))
    assert code == 0
    assert [e["value"] for e in json.loads(out)["entries"]] == ["7/24", "5/24", "1/6", "1/12", "0/1"]


def test_byte_identical_output():
    argv = ["verify", "--theorem", "T9", "--n-max", "15"]
    assert call(*argv)[1] == call(*argv)[1]
    proc = [subprocess.run([sys.executable, "-m", "laplaceq.cli", *argv[:0], "counterexample"],
                           capture_output=True, text=True) for _ in range(2)]
    assert proc[0].returncode == 0 and proc[0].stdout == proc[1].stdout != ""


MALFORMED = [
    (["nope"], "command"),
    (["spectrum"], "--graph or --family"),
    (["spectrum", "--family", "star"], "--n"),
    (["spectrum", "--family", "star:x"], "--family"),
    (["spectrum", "--family", "star:4", "--n", "5"], "--family"),
    (["spectrum", "--family", "star", "--n", "1"], "--family"),
    (["spectrum", "--family", "star_mlike", "--n", "7", "--m", "4"], "--family"),
    (["spectrum", "--family", "wheel", "--n", "7", "--exact"], "--family"),
    (["spectrum", "--family", "star:4", "--graph", "x.json"], "--graph"),
    (["spectrum", "--graph", "/no/such/file.json"], "--graph"),
    (["spectrum", "--family", "star:4", "--bogus"], "--bogus"),
    (["spectrum", "--family", "star:4", "--exact", "--numeric"], "--exact"),
    (["locc", "--a", "star:4"], "--b"),
    (["locc", "--a", "star:4", "--b", "star_like:2"], "--b"),
    (["verify", "--theorem", "T4"], "--theorem"),
    (["verify", "--theorem", "T2", "--n-max", "2"], "--n-max"),
    (["weights", "--phases", "0,pi"], "--phases"),
    (["weights", "--phases", "0,x,pi"], "--phases"),
    (["weights", "--tol", "0"], "--tol"),
    (["weights", "--grid-steps", "0"], "--grid-steps"),
    (["explore", "--n", "3"], "--n"),
    (["explore", "--n", "5", "--max-edges", "99"], "--max-edges"),
    (["explore", "--n", "5", "--conjecture", "3"], "--conjecture"),
]


@pytest.mark.parametrize("argv, needle", MALFORMED)
def test_malformed_inputs_exit_1(argv, needle):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert needle in err


@pytest.mark.parametrize(
    "text, needle",
    [("{", "line 1"), ('{"n":3,"edges":[[0,5]]}', "$.edges[0]"), ('{"n":3,"edges":[]}', "edges")],
)
def test_bad_graph_files_exit_1(tmp_path, text, needle):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = call("spectrum", "--graph", str(path))
    assert code == 1 and "--graph" in err and needle in err


def test_numerical_failure_exit_2(monkeypatch):
    def boom(*_args, **_kw):
        raise NumericalFailure("did not converge", 1.0)

    monkeypatch.setattr(cli, "numeric_spectrum", boom)
    code, out, err = call("spectrum", "--family", "wheel:7")
    assert code == 2 and out == "" and "numerical failure" in err


def test_help_and_version():
    assert call("--version")[0] == 0
