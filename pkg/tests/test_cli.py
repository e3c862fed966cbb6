"""Command-line interface: output shapes and exit codes."""

import json
import subprocess
import sys

import pytest

from quatforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_table_text_and_json(capsys):
    code, out, _ = run(capsys, "table", "H122")
    assert code == 0
    assert "v4 - v1" in out

    code, payload = run_json(capsys, "table", "H236")
    assert code == 0
    assert payload["order"] == "H236"
    assert len(payload["entries"]) == 4


def test_units_output(capsys):
    code, out, _ = run(capsys, "units", "H133")
    assert code == 0
    assert "12 units" in out

    code, payload = run_json(capsys, "units", "H111")
    assert code == 0
    assert len(payload["units"]) == 24


def test_euclid_certificate(capsys):
    code, payload = run_json(capsys, "euclid", "H122", "--depth", "8")
    assert code == 0
    assert payload["ok"] is True
    assert payload["max_residual"] == "1/2"
    assert payload["bound"] == "3/4"


def test_associates_table(capsys):
    code, out, _ = run(capsys, "associates", "1,1,2,2")
    assert code == 0
    assert "16 residues" in out

    code, payload = run_json(capsys, "associates", "1,1,2,2")
    assert code == 0
    assert len(payload["entries"]) == 16


def test_represent_text_and_json(capsys):
    code, out, _ = run(capsys, "represent", "1,2,3,6", "2024")
    assert code == 0
    assert out.startswith("2024 = ")

    code, payload = run_json(capsys, "represent", "1,1,1,1", "2024")
    assert code == 0
    x, y, z, w = payload["rep"]
    assert x * x + y * y + z * z + w * w == 2024
    assert payload["audit"]["factorization"] == [[2, 3], [11, 1], [23, 1]]


def test_represent_audit_flag(capsys):
    code, out, _ = run(capsys, "represent", "1,1,1,1", "14", "--audit")
    assert code == 0
    assert "factorization" in out


def test_scan_ok(capsys):
    code, payload = run_json(capsys, "scan", "1,2,2,4", "50")
    assert code == 0
    assert payload["ok"] is True and payload["verified"] == 50


def test_nonexist_scan(capsys):
    code, payload = run_json(capsys, "nonexist", "--max", "200")
    assert code == 0
    assert payload == {"e_max": 200, "solutions": [], "ok": True}


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "table", "NOPE")[0] == 2
    assert run(capsys, "represent", "1,2,5,10", "5")[0] == 2
    assert run(capsys, "represent", "1,9,9,9", "5")[0] == 2
    assert run(capsys, "represent", "1,1,1,1", "0")[0] == 2
    code, payload = run_json(capsys, "represent", "1,2,5,10", "5")
    assert code == 2 and "pure-imaginary unit" in payload["error"]


def test_missing_subcommand_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_repl_piped_json_lines():
    proc = subprocess.run(
        [sys.executable, "-m", "quatforms.cli", "repl", "--order", "H122", "--json"],
        input="v2*v3\nq = 1 + i\nq*conj(q)\nbogus )\nquit\n",
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    lines = [json.loads(line) for line in proc.stdout.splitlines() if line]
    assert len(lines) == 4
    assert lines[0]["generator"] == [-1, 0, 0, 1]
    assert lines[0]["generator_text"] == "v4 - v1"
    assert lines[1]["bound"] == "q"
    assert lines[2]["generator"] == [2, 0, 0, 0]
    assert "error" in lines[3]


def test_repl_piped_text_mode():
    proc = subprocess.run(
        [sys.executable, "-m", "quatforms.cli", "repl"],
        input="i*j - j*i\n",
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "2*k" in proc.stdout
