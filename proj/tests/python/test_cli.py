import json
import os
import subprocess

import pytest

CLI = os.environ.get("RELAXLAB_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="RELAXLAB_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_report_json_is_stable():
    a = run("--format", "json", "report", "gallery:c0-gap")
    b = run("--format", "json", "report", "gallery:c0-gap")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["values"]["PStar2"] == "0"


def test_problem_file(tmp_path):
    doc = run("--format", "json", "gallery", "c0-gap")
    path = tmp_path / "gap.json"
    path.write_text(doc.stdout)
    out = run("--format", "json", "solve", str(path))
    assert json.loads(out.stdout)["values"]["P"] == "1"
    cert = run("--format", "json", "certify", str(path), "--alpha", "1")
    assert json.loads(cert.stdout)["certified"] is True


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"objective": {"scale": {"factor": "-1", "expr": {"scalar": {"name": "y"}}}}}')
    assert run("solve", str(bad)).returncode == 2
    assert run("relax", "gallery:reinforced", "--variant", "pinf").returncode == 3
    assert run("gallery", "nope").returncode == 2
    assert run("relax", "gallery:c0-gap", "--variant", "pinf").returncode == 0


def test_slater_and_dual_ball():
    out = json.loads(run("--format", "json", "slater", "gallery:reinforced", "--reinforced", "--weights", "halves").stdout)
    assert out["found"] and out["margin"] == "1/2"
    ball = json.loads(run("--format", "json", "gallery", "dual-ball", "--query", "ones").stdout)
    assert ball == {"values": {"P": "0", "PStar2": "-inf"}, "gap": True}


def test_oracle_and_multipliers():
    assert run("oracle", "gallery:c0-gap", "--var", "x1", "--range", "-3:3", "--expr", "constraint:0").returncode == 0
    m = json.loads(run("--format", "json", "multipliers", "gallery:c0-gap").stdout)
    assert m["lambda_inf"] == "1" and m["penalized_value"] == "1"
