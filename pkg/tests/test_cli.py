import csv
import io
import json
import subprocess
import sys

import pytest

from qcorr.cli import main


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 9
    assert out[0].startswith("ghz_case1")


def test_verify_exit_zero(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 9


def test_run_table(capsys):
    assert main(["run", "w_case2"]) == 0
    out = capsys.readouterr().out
    assert "0.208333 (5/24)" in out
    assert "1.66667 (5/3)" in out
    assert out.rstrip().endswith("PASS")


def test_run_json(capsys):
    assert main(["run", "reduced_ghz_comp", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] and data["quantum_correlated"] is False
    phi_q = data["tables"]["phi_q"]
    assert phi_q[1] == {"outcome": ["1/2", "-1/2"], "phi": None, "undefined": True}
    assert data["tables"]["joint"][0] == {"outcome": ["1/2", "1/2"], "p": 0.5}


def test_run_csv_to_directory(tmp_path):
    assert main(["run", "all", "--format", "csv", "--out", str(tmp_path)]) == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "ghz_case1_joint.csv" in files and "reduced_w_bell_mix_phi_q.csv" in files
    rows = list(csv.reader(io.StringIO((tmp_path / "reduced_ghz_comp_phi_q.csv").read_text())))
    assert rows[0] == ["axis1", "axis2", "phi", "undefined"]
    assert rows[2] == ["1/2", "-1/2", "", "true"]
    rows = list(csv.reader(io.StringIO((tmp_path / "w_case1_joint.csv").read_text())))
    assert rows[0] == ["axis1", "axis2", "axis3", "p"]
    assert len(rows) == 9


def test_run_json_to_file(tmp_path):
    out = tmp_path / "all.json"
    assert main(["run", "all", "--format", "json", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())) == 9


def test_compute_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "state": {"mixture": [{"weight": "1/2", "named": "bell", "index": 1},
                              {"weight": "1/2", "named": "bell", "index": 2}]},
        "observable": {"builder": "local_joint", "axes": ["z", "z"]},
        "expected": {"phi_q": ["2", "0", "0", "2"], "quantum_correlated": True},
    }))
    assert main(["compute", "--config", str(cfg), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["name"] == "cfg" and data["passed"]


def test_compute_failing_golden(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({
        "state": {"named": "ghz"},
        "observable": {"builder": "local_joint", "axes": ["z", "z", "z"]},
        "expected": {"quantum_correlated": False},
    }))
    assert main(["compute", "--config", str(cfg)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_bad_input_reports_error(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"state": {"named": "nope"},
                               "observable": {"builder": "local_joint", "axes": ["z"]}}))
    assert main(["compute", "--config", str(cfg)]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["run", "nope"]) == 2


@pytest.mark.parametrize("args", [["verify"], ["list"]])
def test_console_module(args):
    proc = subprocess.run([sys.executable, "-m", "qcorr.cli", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
