import io
import json
import subprocess
import sys
import time

import jsonschema
import pytest

from helpers import ALL_BUILTINS
from ordgraph.cli import main
from ordgraph.report import schema


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (("ord", "1", "+", "w"), "w"),
    (("ord", "w", "x", "2"), "w*2"),
    (("ord", "2", "x", "w"), "w"),
    (("ord", "w", "^", "2"), "w^2"),
    (("ord", "w", "cmp", "w+1"), "Less"),
    (("ord", "1", "sub", "w"), "w"),
    (("ord", "w", "sub", "w*2+3"), "w+3"),
    (("ord", "w^(w)"), "w^w"),
])
def test_ord(argv, expected):
    assert run(*argv) == (0, expected + "\n")


def test_ord_errors(capsys):
    assert run("ord", "w", "sub", "1")[0] == 1
    assert run("ord", "w*0")[0] == 2
    assert "position" in capsys.readouterr().err
    assert run("ord", "w", "+")[0] == 2


def test_usage_error_prints_grammar(capsys):
    assert run("frobnicate")[0] == 2
    err = capsys.readouterr().err
    assert "ord :=" in err and "vertex" in err


def test_verdict_json():
    code, out = run("verdict", "two_plus_two", "--json")
    body = json.loads(out)
    assert code == 0
    assert body["ckOverall"] == "HoldsViaTheorem"
    assert body["simplicity"]["status"] == "Simple"


def test_falpha_dot():
    code, out = run("falpha", "two_plus_two", "--level", "0", "--dot")
    assert code == 0
    nodes = [l for l in out.splitlines() if "[label=" in l and "->" not in l]
    edges = [l for l in out.splitlines() if "->" in l]
    assert len(nodes) == 1 and len(edges) == 2
    assert all(l.strip().startswith('"[v]" -> "[v]"') for l in edges)


def test_falpha_level_out_of_range():
    assert run("falpha", "two_plus_two", "--level", "5")[0] == 2


@pytest.mark.parametrize("name", ALL_BUILTINS)
def test_analyze_json_schema_and_determinism(name):
    t0 = time.perf_counter()
    code, first = run("analyze", name, "--json")
    assert time.perf_counter() - t0 < 10
    assert code == 0
    report = json.loads(first)
    jsonschema.validate(report, schema())
    assert list(report) == sorted(report)
    assert [v["name"] for v in report["vertices"]] == sorted(v["name"] for v in report["vertices"])
    # fresh process: byte-identical output
    again = subprocess.run([sys.executable, "-m", "ordgraph", "analyze", name, "--json"],
                           capture_output=True, text=True, check=True).stdout
    assert again == first


def test_analyze_roundtrip_and_bound():
    code, out = run("analyze", "two_loop", "--json", "--bound", "3")
    report = json.loads(out)
    assert json.loads(json.dumps(report)) == report
    assert report["bounds"]["fibreClasses"] == 3
    for v in report["vertices"]:
        for row in v["perLevel"]:
            if row["fibre"]["kind"] == "Unknown":
                assert row["fibre"]["bound"] == 3
    assert run("analyze", "two_loop", "--bound", "0")[0] == 2


def test_analyze_text_lists_relation_lines():
    code, out = run("analyze", "interval_omega2")
    assert code == 0
    assert "T[v] = T[f] T[f]*" in out
    assert "CycleWithoutEntry" in out


def test_analyze_single_level():
    code, out = run("analyze", "two_plus_two", "--level", "1", "--json")
    rows = json.loads(out)["vertices"][0]["perLevel"]
    assert [r["level"] for r in rows] == [1]


def test_nonreturning_command():
    code, out = run("nonreturning", "two_plus_two", "--vertex", "v", "--level", "1",
                    "--min-blocks", "3")
    assert code == 0 and "yes" in out
    assert run("nonreturning", "interval_omega2", "--vertex", "v", "--level", "1",
               "--min-blocks", "1")[0] == 1
    assert run("nonreturning", "two_plus_two", "--vertex", "q", "--level", "1",
               "--min-blocks", "1")[0] == 2


def test_eval():
    assert run("eval", "interval_omega2", "v * e", "f * v") == (0, "f * v\n")
    assert run("eval", "two_plus_two", "v * g", "h * v") == (0, "0\n")
    # shell-split form: tokens around a lone '*' form one operand
    assert run("eval", "two_plus_two", "e", "*", "e") == (0, "e * e\n")
    assert run("eval", "two_plus_two", "e e")[0] == 2


def test_check_file(tmp_path):
    good = tmp_path / "fig.og"
    good.write_text("vertex v\nedge e : v -> v\ngen f level 1 : v -> v = e f\n")
    assert run("check", str(good))[0] == 0
    clash = tmp_path / "clash.og"
    clash.write_text("vertex v\nedge e : v -> v\ngen g3 level 1 : v -> v = e g3\n"
                     "gen g1 level 1 : v -> v = e g3\n")
    code, out = run("check", str(clash))
    assert code == 1 and "collision" in out
    assert run("verdict", str(clash))[0] == 1


def test_file_errors_have_positions(tmp_path, capsys):
    bad = tmp_path / "bad.og"
    bad.write_text("vertex v\nedge e : v -> nowhere\n")
    assert run("check", str(bad))[0] == 2
    assert "line 2, column 15" in capsys.readouterr().err
    assert run("check", str(tmp_path / "missing.og"))[0] == 2
