import json
import shutil
import subprocess
import sys

import pytest

from thetacalc import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_examples(capsys):
    assert run(capsys, "compute", "theta(e1) e1", "--basis", "e") == (0, "e[2] : 1\n", "")
    code, out, _ = run(capsys, "compute", "H[2]", "--basis", "s")
    assert code == 0 and out.splitlines() == ["s[2] : 1", "s[1,1] : q"]
    code, out, _ = run(capsys, "compute", "nabla e1", "--basis", "e")
    assert out == "e[1] : -1\n"


def test_compute_composition_order(capsys):
    # rightmost atom acts first: theta(e1) e1 = e2, then h1^perp e2 = e1
    code, out, _ = run(capsys, "compute", "skew(h1) theta(e1) e1", "--basis", "e")
    assert (code, out) == (0, "e[1] : 1\n")


def test_compute_errors(capsys):
    code, _, err = run(capsys, "compute", "nabla @ e1")
    assert code == 1 and "column 7" in err
    code, _, err = run(capsys, "compute", "frob e1")
    assert code == 1 and "column 1" in err
    code, _, err = run(capsys, "compute", "theta(e3) e3", "-N", "4")
    assert code == 1 and "exceeds bound" in err


def test_list(capsys):
    code, out, _ = run(capsys, "list", "--filter", "q-*", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 7
    assert {"name", "group", "ref", "params"} <= set(rows[0])


def test_run_unknown(capsys):
    code, _, err = run(capsys, "run", "--check", "no-such")
    assert code == 2 and "unknown check" in err


def test_run_json(capsys):
    code, out, _ = run(capsys, "run", "--check", "theta-reciprocity", "-N", "2",
                       "--format", "json", "--no-timings", "--jobs", "1")
    report = json.loads(out)
    assert code == 0
    assert report["failures"] == 0 and report["bound"] == 2
    (row,) = report["checks"]
    assert row["name"] == "theta-reciprocity" and row["status"] == "pass" and row["instances"] == (1 + 1 + 2) * 3


def test_run_json_byte_identical(capsys):
    args = ("run", "--check", "mac-*", "-N", "2", "--format", "json", "--no-timings")
    _, first, _ = run(capsys, *args, "--jobs", "1")
    _, second, _ = run(capsys, *args, "--jobs", "2")
    assert first == second


def test_run_mutation_fails(capsys):
    code, out, _ = run(capsys, "run", "--check", "nabla-omegabar", "-N", "2", "--mutation", "nabla_sign_flip")
    assert code == 1
    assert "FAIL" in out and "params" in out


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("THETACALC_FORMAT", "json")
    monkeypatch.setenv("THETACALC_NO_TIMINGS", "1")
    code, out, _ = run(capsys, "run", "--check", "q-recurrence", "-N", "1", "--qbound", "3")
    assert code == 0 and json.loads(out)["checks"][0]["ms"] == 0


def test_cache_commands(capsys, tmp_path):
    cache = tmp_path / "mac"
    code, out, _ = run(capsys, "cache", "warm", "--cache-dir", str(cache), "--max-degree", "3")
    assert code == 0 and json.loads(out) == {"stored": 6}
    code, out, _ = run(capsys, "cache", "verify", "--cache-dir", str(cache), "--max-degree", "3")
    assert code == 0 and json.loads(out) == {"loaded": 6, "missing": 0}
    victim = cache / "2-1.sym"
    victim.write_text(victim.read_text() + " ")
    code, _, err = run(capsys, "cache", "verify", "--cache-dir", str(cache), "--max-degree", "3")
    assert code == 3 and "2-1" in err


def test_console_script():
    exe = shutil.which("thetacalc")
    cmd = [exe] if exe else [sys.executable, "-m", "thetacalc.cli"]
    proc = subprocess.run(cmd + ["run", "--check", "no-such"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run(cmd + ["compute", "nabla e1", "--basis", "e"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "e[1] : -1\n"
