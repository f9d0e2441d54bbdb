import dataclasses
import io
import json
import subprocess
import sys

import pytest

from conftest import petersen
from minorforge import cli, format_edge_list, to_graph6
from minorforge import sweep as sweep_module
from minorforge.invariants import compute_bundle


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_check_complete_graph():
    code, out, _ = run(["check", "Bw", "--theorem", "MAIN"])
    assert code == 0
    [rep] = json.loads(out)["reports"]
    assert rep["applicable"] is False


def test_check_all_theorems():
    code, out, _ = run(["check", "Es\\o", "--theorem", "all"])
    assert code == 0
    assert [r["theorem"] for r in json.loads(out)["reports"]] == list(cli.THEOREMS)


def test_sweep_n5():
    code, out, _ = run(["sweep", "--n", "5", "--theorem", "all", "--no-timing"])
    d = json.loads(out)
    assert code == 0 and d["anomalies"] == [] and d["total"] == 1024 and "runtime_ms" not in d


def test_minor_from_stdin_edge_list(monkeypatch):
    code, out, err = run(["minor", "-", "--exact"], stdin=format_edge_list(petersen()), monkeypatch=monkeypatch)
    d = json.loads(out)
    assert code == 0 and err == ""
    assert d["verdict"]["valid"] and d["certificate"]["order"] >= 2
    assert d["certificate"]["order"] <= d["h"]


def test_invariants_and_chi():
    code, out, _ = run(["invariants", to_graph6(petersen()), "--chi"])
    d = json.loads(out)
    assert code == 0 and d["alpha"] == 4 and d["chi"] == 3 and d["n"] == 10


def test_recognize():
    code, out, _ = run(["recognize", "Ch"])  # path 0-1-2-3 in graph6
    d = json.loads(out)
    assert code == 0 and d["lemma1"] == {"matching": [[0, 1], [2, 3]]}
    code, out, _ = run(["recognize", "Bw"])
    assert json.loads(out)["lemma1"] == "none"


def test_convert_both_ways(tmp_path):
    code, out, _ = run(["convert", "Bw", "--to", "edges"])
    d = json.loads(out)
    assert code == 0 and d["data"] == "3 3\n0 1\n0 2\n1 2\n"
    path = tmp_path / "tri.txt"
    path.write_text(d["data"])
    code, out, _ = run(["convert", str(path), "--to", "g6"])
    assert code == 0 and json.loads(out)["data"] == "Bw"


def test_graph6_file_by_extension(tmp_path):
    path = tmp_path / "k3.g6"
    path.write_text("Bw\n")
    code, out, _ = run(["invariants", str(path)])
    assert code == 0 and json.loads(out)["omega"] == 3


def test_format_override(tmp_path):
    # "3 0" would be an edge list; forced to g6 it must fail to parse
    path = tmp_path / "x"
    path.write_text("3 0\n")
    assert run(["invariants", str(path)])[0] == 0
    assert run(["invariants", str(path), "--format", "g6"])[0] == 2


def test_exit_codes():
    assert run(["bogus"])[0] == 1
    assert run([])[0] == 1
    assert run(["check", "Bw", "--theorem", "NOPE"])[0] == 1
    assert run(["sweep", "--n", "9"])[0] == 1
    assert run(["sweep", "--n", "3", "--stream", "x"])[0] == 1
    assert run(["sweep", "--n", "3", "--filter", "bad=1"])[0] == 1
    assert run(["invariants", "no/such/file.txt"])[0] == 1
    code, out, err = run(["invariants", "Bww"])
    assert code == 2 and out == "" and "byte" in err
    assert run(["invariants", "?"])[0] == 1  # n = 0 has no invariants


def test_parse_error_in_edge_list(monkeypatch):
    code, out, err = run(["invariants", "-"], stdin="3 1\n0 5\n", monkeypatch=monkeypatch)
    assert code == 2 and out == "" and "line 2" in err


def test_workers_env(monkeypatch):
    monkeypatch.setenv("MINORFORGE_WORKERS", "2")
    code, out, _ = run(["sweep", "--n", "4", "--no-timing"])
    monkeypatch.setenv("MINORFORGE_WORKERS", "1")
    code1, out1, _ = run(["sweep", "--n", "4", "--no-timing"])
    assert code == code1 == 0 and out == out1
    monkeypatch.setenv("MINORFORGE_WORKERS", "lots")
    assert run(["sweep", "--n", "4"])[0] == 1


def test_stream_sweep(tmp_path):
    path = tmp_path / "s.g6"
    path.write_text("Bw\nnot-a-graph\nCr\n")
    code, out, err = run(["sweep", "--stream", str(path), "--theorem", "MAIN,OMEGA2", "--pretty"])
    d = json.loads(out)
    assert code == 0 and d["skipped"] == 1 and d["errors"][0]["line"] == 2
    assert "line 2" in err and "MAIN" in err


def corrupt(g, want_chi=False, memo=None):
    return dataclasses.replace(compute_bundle(g, want_chi, memo), h=1)


def test_fault_injection_check(monkeypatch):
    monkeypatch.setattr(cli, "compute_bundle", corrupt)
    code, out, err = run(["check", "Cr", "--theorem", "DM"])
    assert code == 3 and json.loads(out)["reports"][0]["holds"] is False
    assert "anomaly" in err


def test_fault_injection_sweep(monkeypatch):
    monkeypatch.setattr(sweep_module, "compute_bundle", corrupt)
    code, out, _ = run(["sweep", "--n", "3", "--theorem", "DM", "--workers", "1"])
    assert code == 3 and json.loads(out)["anomalies"]


def test_pretty_goes_to_stderr():
    code, out, err = run(["check", "Cr", "--pretty"])
    assert code == 0 and json.loads(out) and "theorem" in err


def test_installed_entry_point_separates_streams():
    proc = subprocess.run([sys.executable, "-m", "minorforge", "check", "Bw", "--pretty"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    json.loads(proc.stdout)
    assert "MAIN" in proc.stderr


@pytest.mark.parametrize("argv", [["invariants", "Bw"], ["minor", "Bw"], ["recognize", "Bw"],
                                  ["convert", "Bw", "--to", "g6"], ["check", "Bw"]])
def test_stdout_is_json(argv):
    code, out, _ = run(argv)
    assert code == 0 and isinstance(json.loads(out), dict)
