import json
import subprocess
import sys

import pytest

from hsalgebra.cli import main
from hsalgebra.errors import ParameterError
from hsalgebra.suites import Failure, Report, SuiteConfig, report_emit, reports_from_json, run_suite


def run_cli(args):
    return subprocess.run([sys.executable, "-m", "hsalgebra", *args], capture_output=True, text=True)


def test_pair_verb():
    r = run_cli(["pair", "--s", "2", "--phi", "3:2,5:-1", "--x", "5"])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["index"] == doc["pair"] == doc["triple_index"] == -1
    assert doc["identity_index"] == 0


def test_expand_verb(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"s": 3, "level": 2, "ring": "int", "domain": "units",
                                "values": ["0", "0", "1", "0", "0", "0", "0", "0", "0"]}))
    for method in ("direct", "recursive"):
        r = run_cli(["expand", "--s", "3", "--cyl", str(path), "--method", method])
        assert r.returncode == 0, r.stderr
        assert json.loads(r.stdout)["coeffs"] == [{"x": 2, "c": 1}, {"x": 5, "c": -1}, {"x": 8, "c": -1}]


def test_norms_and_count_verbs(tmp_path, capsys):
    assert main(["norms", "--phi", "3:2,5:-1", "--c1", "2", "--m", "3", "--lmax", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["shift"]["exact"] == "6"
    out = tmp_path / "count.json"
    assert main(["count", "--phi", "3:2,5:-1", "--R", "4", "--R", "1000", "--json-out", str(out)]) == 0
    counts = [row["count"] for row in json.loads(out.read_text())["counts"]]
    assert counts[0] == 2 and counts[1] >= 1000


def test_count_default_phi(capsys):
    assert main(["count", "--s", "3", "--R", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["phi"] == {"2": 1}


@pytest.mark.parametrize("args", [
    ["verify", "--c1", "0"],
    ["verify", "--s", "1"],
    ["verify", "--suite", "nope"],
    ["pair", "--phi", "4:1", "--x", "3"],
    ["pair", "--phi", "3:1"],
    ["expand", "--cyl", "/nonexistent.json"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(args):
    assert main(args) == 2


def test_verify_stacey_reports_safe_count():
    r = run_cli(["verify", "--suite", "stacey", "--window", "10"])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["status"] == "pass"
    counts = doc["reports"][0]["details"]["checked_columns[s=2,M=10]"]
    assert counts["V*V=I"] == 11 and counts["mu_chi0=I-VV*"] == 21


def test_verify_is_byte_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        r = run_cli(["verify", "--suite", "khom", "--suite", "fredholm", "--s", "3", "--seed", "11",
                     "--json-out", str(path)])
        assert r.returncode == 0, r.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_text_format_lists_table():
    r = run_cli(["verify", "--suite", "sadic,cylinder", "--format", "text"])
    assert r.returncode == 0
    assert "sadic" in r.stdout and "cylinder" in r.stdout and "overall: pass" in r.stdout


def test_default_config_passes():
    reports = run_suite(SuiteConfig())
    assert [r.suite for r in reports] == ["sadic", "cylinder", "khom", "stacey", "fredholm", "spectral"]
    assert all(r.status == "pass" for r in reports)


def test_suite_selection_does_not_shift_streams():
    alone = run_suite(SuiteConfig(suites=("fredholm",), seed=4))[0]
    full = [r for r in run_suite(SuiteConfig(suites=("sadic", "fredholm"), seed=4)) if r.suite == "fredholm"][0]
    assert alone.to_dict() == full.to_dict()


def test_config_validation():
    with pytest.raises(ParameterError):
        SuiteConfig(c1=0)
    with pytest.raises(ParameterError):
        SuiteConfig(window=0)


def test_failing_report_round_trips_and_names_witness():
    rep = Report("demo")
    rep.expect("ok", True)
    rep.expect("index=phi_x", False, {"x": 3}, 2, 1, ["E^{ev,+}_(3,1,0)"])
    assert rep.status == "fail"
    blob = report_emit(rep, "json")
    assert b'"status": "fail"' in blob
    back = reports_from_json(blob)[0]
    assert back.to_dict() == rep.to_dict()
    assert isinstance(back.failures[0], Failure)
    assert b"E^{ev,+}_(3,1,0)" in report_emit(rep, "text")
