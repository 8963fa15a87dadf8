import csv
import io
import json
import re
import subprocess
import sys

import pytest

from cozero.cli import RunConfig, UsageError, run
from cozero.multiset import SpectrumMultiset
from cozero.ring import EnumerationCapError


def cli(*args):
    return run([str(a) for a in args])


def test_spectrum_all_n9():
    code, out, _ = cli("spectrum", 9, "--method", "all")
    assert "structural: {0^[3], 18^[20], 24^[3]}" in out
    assert "oracle: {0^[3], 18^[20], 24^[3]}" in out
    assert "structural vs oracle: match" in out
    # the published p^2 closed form is {0^[3], 24^[23]} and disagrees
    assert "closed_form: {0^[3], 24^[23]}" in out
    assert "closed_form vs oracle: mismatch" in out
    assert code == 2


def test_spectrum_all_matches_where_closed_form_holds():
    code, out, _ = cli("spectrum", 7, "--method", "all")
    assert code == 0 and out.count(": match") == 2


def test_spectrum_all_reports_refusal():
    code, out, _ = cli("spectrum", 8, "--method", "all")
    assert code == 0
    assert "closed_form: refused" in out


def test_spectrum_oracle_json_round_trip():
    code, out, _ = cli("spectrum", 10, "--method", "oracle", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 10 and doc["method"] == "oracle"
    assert doc["vertex_count"] == 59 and doc["edge_count"] == 520
    assert sum(e["multiplicity"] for e in doc["eigenvalues"]) == 59
    assert set(doc["eigenvalues"][0]) == {"value", "rounded", "multiplicity"}
    back = SpectrumMultiset.from_records(doc["eigenvalues"], doc["cluster_tol"])
    from cozero import RingContext, build_graph, oracle_spectrum

    assert back == oracle_spectrum(build_graph(RingContext(10)))


def test_spectrum_all_json():
    code, out, _ = cli("spectrum", 12, "--method", "all", "--format", "json")
    doc = json.loads(out)
    assert doc["comparisons"]["structural"]["match"] is True
    assert doc["comparisons"]["closed_form"]["match"] is False
    assert doc["comparisons"]["closed_form"]["dimension"] == [65, 95]
    assert code == 2


def test_spectrum_closed_form_prime():
    code, out, _ = cli("spectrum", 7, "--method", "closed_form")
    assert code == 0 and "{0^[6]}" in out


def test_spectrum_csv():
    code, out, _ = cli("spectrum", 6, "--method", "structural", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert sum(int(r["multiplicity"]) for r in rows) == 23


def test_spectrum_errors():
    code, _, err = cli("spectrum", 8, "--method", "closed_form")
    assert code == 1 and "structural" in err
    code, _, err = cli("spectrum", 16, "--method", "closed_form")
    assert code == 1
    code, _, err = cli("spectrum", 300)
    assert code == 1 and "cap" in err
    code, _, err = cli("spectrum", 1)
    assert code == 1
    code, _, err = cli("spectrum", 6, "--tol", "-1")
    assert code == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["spectrum", "6", "--method", "bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 1


def test_max_n_flag_and_env(monkeypatch):
    assert cli("spectrum", 30, "--max-n", 20)[0] == 1
    monkeypatch.setenv("COZERO_MAX_N", "5")
    assert cli("spectrum", 6)[0] == 1
    assert cli("spectrum", 6, "--max-n", 6)[0] == 0


def test_run_config_invariants():
    with pytest.raises(EnumerationCapError):
        RunConfig(n=300)
    with pytest.raises(UsageError):
        RunConfig(n=6, tol=0)
    with pytest.raises(UsageError):
        RunConfig(n=6, output_format="xml")


def test_reduced_dot_pq():
    code, out, _ = cli("reduced", 15, "--format", "dot")
    assert code == 0
    assert out.startswith("graph reduced_15 {") and out.rstrip().endswith("}")
    nodes = re.findall(r'^  "[^"]+" \[', out, re.M)
    edges = re.findall(r"^  .* -- .*;$", out, re.M)
    assert len(nodes) == 7 and len(edges) == 9


def test_reduced_json():
    doc = json.loads(cli("reduced", 9, "--format", "json")[1])
    assert len(doc["vertices"]) == 5
    isolated = [v for v in doc["vertices"] if v["degree"] == 0]
    assert [v["label"] for v in isolated] == ["A_{p,0}"]
    assert len(json.loads(cli("reduced", 30, "--format", "json")[1])["vertices"]) == 25


def test_reduced_text_and_csv():
    code, out, _ = cli("reduced", 6)
    assert code == 0 and "ideals=7 edges=9" in out
    rows = list(csv.DictReader(io.StringIO(cli("reduced", 6, "--format", "csv")[1])))
    assert sum(int(r["weight"]) for r in rows) == 23


def test_graph_exports():
    code, out, _ = cli("graph", 6, "--format", "json")
    doc = json.loads(out)
    assert doc["vertex_count"] == 23 and len(doc["edges"]) == doc["edge_count"] == 100
    assert doc["components"] == 1
    dot = cli("graph", 8, "--format", "dot")[1]
    assert dot.count(" -- ") == 252
    assert "isolated: 4x" in cli("graph", 8)[1]


def test_verify_sweep():
    code, out, _ = cli("verify", "--from", 4, "--to", 30)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 27
    assert all(r["pass"] == "True" and r["match"] == "True" for r in rows)
    assert {r["table_check"] for r in rows} == {"pass", "n_a"}


def test_verify_connectivity_column():
    rows = list(csv.DictReader(io.StringIO(cli("verify", "--from", 8, "--to", 8)[1])))
    assert rows[0]["connectivity"] == "disconnected, isolated=⟨4x⟩"
    rows = list(csv.DictReader(io.StringIO(cli("verify", "--from", 6, "--to", 6)[1])))
    assert rows[0]["connectivity"] == "connected"
    assert rows[0]["prime_power"] == "False"


def test_verify_bad_range():
    assert cli("verify", "--from", 10, "--to", 5)[0] == 1
    assert cli("verify", "--from", 4, "--to", 300)[0] == 1


def test_output_is_deterministic(tmp_path):
    for args in (
        ["spectrum", "12", "--method", "all", "--format", "json"],
        ["reduced", "30", "--format", "dot"],
        ["graph", "10", "--format", "dot"],
        ["verify", "--from", "4", "--to", "12"],
    ):
        assert run(args) == run(args)
    target = tmp_path / "out.dot"
    code, out, _ = run(["reduced", "15", "--format", "dot", "--output", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == run(["reduced", "15", "--format", "dot"])[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cozero.cli", "spectrum", "7", "--method", "closed_form"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "{0^[6]}" in proc.stdout
