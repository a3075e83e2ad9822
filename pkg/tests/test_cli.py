import json
import subprocess
import sys

import pytest

from ilmt import fixtures
from ilmt.cli import main
from ilmt.tournament import parse_edgelist


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)["result"]


def test_generate_edge_10(capsys):
    code, out, _ = run(capsys, "generate", "--base", "edge", "--seq", "10", "--steps", "2", "--format", "edgelist")
    assert code == 0 and parse_edgelist(out) == fixtures.edge_10(2)


def test_generate_echo_and_oriented(capsys):
    _, out, _ = run(capsys, "generate", "--base", "d3", "--steps", "0")
    assert parse_edgelist(out) == fixtures.d3()
    _, out, _ = run(capsys, "generate", "--base", "edge", "--seq", "10", "--steps", "2", "--oriented")
    assert parse_edgelist(out, oriented=True) == fixtures.oriented_edge_10(2)


def test_generate_dot_labels(capsys):
    _, out, _ = run(capsys, "generate", "--base", "edge", "--seq", "10", "--format", "dot")
    assert '6 [label="(a\')\'"]' in out and '4 [label="a\'\'"]' in out and "0 -> 1;" in out


def test_generate_json_and_file_roundtrip(capsys, tmp_path):
    _, out, _ = run(capsys, "generate", "--base", "fig2:H", "--seq", "01", "--format", "json")
    doc = json.loads(out)
    assert doc["n"] == 16 and len(doc["arcs"]) == 120
    path = tmp_path / "g.txt"
    run(capsys, "generate", "--base", "fig2:H", "--seq", "01", "--report", str(path))
    _, again, _ = run(capsys, "generate", "--file", str(path), "--steps", "0")
    assert again == path.read_text()


def test_census(capsys):
    r = result(capsys, "census", "--base", "d3", "--k", "3")
    assert (r["a"], r["b"]) == (1, 0)
    r = result(capsys, "census", "--base", "d3", "--seq", "0", "--steps", "1", "--k", "3")
    assert (r["a"], r["b"]) == (8, 12)
    assert r["d3_proportion"] == {"num": 2, "den": 5}


def test_census_trace(capsys):
    r = result(capsys, "census", "--base", "d3", "--seq", "0", "--repeat", "6", "--k", "4", "--trace")
    rows = r["trace"]
    assert len(rows) == 7 and not r["truncated"]
    t4 = [row["sigma"][0]["num"] / row["sigma"][0]["den"] for row in rows[2:]]
    assert abs(t4[-1] - 3 / 8) < abs(t4[0] - 3 / 8)


def test_analyze(capsys):
    r = result(capsys, "analyze", "--base", "d3")
    assert (r["diameter"], r["strong"], r["kappa"], r["gamma_in"], r["gamma_out"]) == (2, True, 1, 2, 2)
    r = result(capsys, "analyze", "--base", "t3")
    assert (r["strong"], r["kappa"], r["gamma_in"], r["gamma_out"]) == (False, 0, 1, 1)
    r = result(capsys, "analyze", "--base", "d3", "--seq", "0", "--steps", "1", "--cop", "--chi")
    assert r["cop_number"] in (2, 3) and r["chi"] == 2


def test_embed(capsys):
    r = result(capsys, "embed", "--base", "t3", "--target", "d3", "--seq", "000")
    assert r["verified"] and r["host_n"] == 24
    assert result(capsys, "embed", "--base", "d3", "--target", "d3", "--seq", "000")["verified"]
    code, _, err = run(capsys, "embed", "--base", "edge", "--target", "d3", "--seq", "000")
    assert code == 1 and "target" in err


def test_solve_cops(capsys):
    r = result(capsys, "solve-cops", "--base", "d3")
    assert r["cop_number"] == 2 and r["verified"]


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "universality")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["summary"]["failed"] == 0
    assert len(doc["timestamp"]["check_seconds"]) == doc["result"]["summary"]["total"]
    code, _, err = run(capsys, "verify", "distinguish")
    assert code == 3 and "FAIL" in err


def test_determinism_modulo_timestamp(capsys):
    docs = []
    for _ in range(2):
        _, out, _ = run(capsys, "verify", "coloring")
        doc = json.loads(out)
        doc.pop("timestamp")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["generate", "--base", "nope"], 1),
        (["generate", "--seq", "012"], 1),
        (["generate", "--seq", "0", "--steps", "3"], 1),
        (["generate", "--file", "/nonexistent/g.txt"], 1),
        (["generate", "--seq", "0", "--repeat", "5", "--max-nodes", "50"], 2),
        (["analyze", "--base", "hero:5", "--chi", "--seq", "0", "--max-nodes", "10"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    capsys.readouterr()


@pytest.mark.parametrize("argv", [["census", "--k", "5"], ["frobnicate"], [], ["verify", "everything"]])
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("ILMT_MAX_NODES", "20")
    code, _, err = run(capsys, "generate", "--seq", "000")
    assert code == 2 and "cap" in err


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "ilmt", "census", "--base", "t3"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["result"]["b"] == 1
