from __future__ import annotations

import json
import subprocess
import sys

import pytest

from majorana_xyz.cli import main
from majorana_xyz.code import CodeStructure


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_to_file(tmp_path, capsys):
    path = tmp_path / "code4.json"
    code, _, _ = run(capsys, "build", "--L", "4", "--out", str(path))
    assert code == 0
    built = CodeStructure.from_json(path.read_text())
    assert built.n == 16
    assert built.params.s == 9


def test_build_stdout(capsys):
    code, out, _ = run(capsys, "build", "--L", "5", "--out", "-")
    assert code == 0
    assert json.loads(out)["n"] == 25


def test_build_rejects_small_lattice(capsys):
    code, _, err = run(capsys, "build", "--L", "2")
    assert code == 2
    assert "at least 3" in err


def test_unknown_command_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_distance_l3(capsys):
    code, out, _ = run(capsys, "distance", "--L", "3", "--threads", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["results"]["d"] == 3
    assert doc["results"]["witness"]
    assert doc["checks"][0]["pass"]


def test_distance_budget_too_large(capsys):
    code, out, _ = run(capsys, "distance", "--L", "3", "--budget", "10")
    assert code == 2
    assert "error" in json.loads(out)


def test_classify_l4_weight2(tmp_path, capsys):
    csv_path = tmp_path / "c.csv"
    code, out, _ = run(capsys, "classify", "--L", "4", "--max-weight", "2", "--csv", str(csv_path), "--threads", "1")
    doc = json.loads(out)
    assert code == 0
    for row in doc["results"]["per_weight"]:
        assert row["detectable"] == row["candidates"]
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("L,weight")
    assert len(lines) == 3


def test_classify_reports_cap(capsys):
    code, out, _ = run(capsys, "classify", "--L", "4", "--max-weight", "3", "--cap", "100", "--threads", "1")
    doc = json.loads(out)
    assert doc["budget_exceeded"] is True
    assert any(c["status"] == "skipped" for c in doc["checks"])


def test_verify_l6_reports_lower_bound(capsys):
    code, out, _ = run(capsys, "verify", "--L", "6", "--distance-budget", "4", "--threads", "1")
    doc = json.loads(out)
    assert doc["results"]["distance"]["lower_bound"] == 5
    assert doc["results"]["distance"]["d"] is None
    # exit status reflects every failed check, published claims included
    failed = [c for c in doc["checks"] if c["status"] == "fail"]
    assert code == (1 if failed else 0)
    assert not [c for c in failed if not c["claim"]]


def test_verify_l3_includes_weight3_census(capsys):
    _, out, _ = run(capsys, "verify", "--L", "3", "--max-weight", "3", "--threads", "1")
    doc = json.loads(out)
    weights = [row["weight"] for row in doc["results"]["classification"]["per_weight"]]
    assert weights == [1, 2, 3]


def test_sample_csv_and_determinism(tmp_path, capsys):
    argv = ["sample", "--L", "3", "--p", "0.01", "--shots", "20000", "--seed", "42"]
    c1, out1, _ = run(capsys, *argv, "--threads", "1", "--csv", str(tmp_path / "a.csv"))
    c2, out2, _ = run(capsys, *argv, "--threads", "3", "--csv", str(tmp_path / "b.csv"))
    assert c1 == c2 == 0
    assert out1 == out2
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    header = (tmp_path / "a.csv").read_text().splitlines()[0]
    assert header == "L,p,shots,failures,rate,ci_low,ci_high,unknown_syndrome_count,seed"


def test_sample_requires_seed(capsys):
    assert run(capsys, "sample", "--L", "3", "--p", "0.01", "--shots", "10")[0] == 2


def test_sample_rejects_large_lattice(capsys):
    code, out, err = run(capsys, "sample", "--L", "6", "--p", "0.01", "--shots", "10", "--seed", "1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "DecoderUnsupported"


def test_bad_probability(capsys):
    assert run(capsys, "sample", "--L", "3", "--p", "2", "--shots", "10", "--seed", "1")[0] == 2


def test_timestamps_only_when_asked(capsys):
    _, plain, _ = run(capsys, "distance", "--L", "3")
    _, stamped, _ = run(capsys, "distance", "--L", "3", "--timestamps")
    assert "generated_at" not in json.loads(plain)
    assert "generated_at" in json.loads(stamped)


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "majorana_xyz.cli", "distance", "--L", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["d"] == 3
