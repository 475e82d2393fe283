from __future__ import annotations

import json
import subprocess
import sys

import pytest

from etaforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_strange(capsys):
    code, out, _ = run(capsys, "verify", "--which", "strange")
    assert code == 0 and out.count("[PASS]") == 24


def test_case_report_json(capsys):
    code, out, _ = run(capsys, "case", "--xiao", "1", "--report")
    d = json.loads(out)
    assert code == 0 and d["eta_quotient"] == "1^8 2^8" and d["weight"] == "8"


def test_verify_thm13(capsys):
    code, out, _ = run(capsys, "verify", "--which", "thm13", "--delta", "A1", "--order", "50")
    assert code == 0 and "residual zero" in out


@pytest.mark.parametrize("argv", [
    ["expand", "--eta", "1^8 2^8", "--order", "10", "--level", "2"],
    ["theta", "--delta", "D5", "--order", "8"],
    ["local", "--delta", "E7", "--order", "10", "--route", "nakajima"],
    ["local", "--delta", "D4", "--order", "10", "--route", "mckay", "--json"],
    ["case", "--xiao", "8", "--order", "30"],
    ["verify", "--which", "thm12", "--delta", "E6", "--order", "20"],
    ["verify", "--which", "thm14", "--order", "20"],
    ["verify", "--which", "rigid", "--samples", "10"],
    ["verify", "--which", "oracle", "--order", "8"],
    ["hecke", "--xiao", "8", "--primes", "2,3,5", "--order", "100"],
    ["refine", "--xiao", "0", "--chiy", "--order", "3"],
    ["refine", "--hodge", "--order", "3", "--json"],
    ["refine", "--xiao", "14", "--zbir", "--order", "50"],
])
def test_verbs_succeed(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert out.strip()


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "--eta", "1^24", "--order", "3", "--json")
    d = json.loads(out)
    assert d["weight"] == "12" and d["expansion"]["terms"] == [[1, "1"], [2, "-24"]]


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["theta", "--delta", "F4"],
    ["expand", "--eta", "one^8"],
    ["expand", "--eta", "1^1", "--order", "x"],
    ["case", "--xiao", "99"],
    ["case", "--xiao", "6"],
    ["expand", "--eta", "1^1 3^1", "--level", "4"],
    ["refine", "--xiao", "0"],
    ["local", "--delta", "A2", "--route", "mckay"],
    ["suite", "--only", "42"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_case_file_exit_2(capsys, tmp_path):
    f = tmp_path / "cases.txt"
    f.write_text("11;Z/2xZ/4;8;4*A3,6*A1\n")
    code, _, err = run(capsys, "case", "--file", str(f), "--xiao", "11")
    assert code == 2 and "nonnegative integer" in err


def test_custom_case_file(capsys, tmp_path):
    f = tmp_path / "cases.txt"
    f.write_text("11;Z/2xZ/4;8;4*A3,4*A1\n")
    code, out, _ = run(capsys, "case", "--file", str(f), "--xiao", "11", "--report")
    assert code == 0 and json.loads(out)["eta_quotient"] == "2^4 4^4"


def test_check_failure_exit_1(capsys, tmp_path):
    # the Q8 record has half-integral weight, so the eigenform check is unsupported
    f = tmp_path / "cases.txt"
    f.write_text("10;Q8;8;3*A3,2*D4\n")
    code, out, _ = run(capsys, "hecke", "--file", str(f), "--xiao", "10", "--primes", "3")
    assert code == 1 and "unsupported" in out


def test_budget_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("ETAFORGE_ENUM_BUDGET", "10")
    code, _, err = run(capsys, "theta", "--delta", "A3", "--order", "100")
    assert code == 3 and "budget" in err
    code, _, _ = run(capsys, "verify", "--which", "oracle", "--order", "40")
    assert code == 3


def test_suite_is_deterministic(capsys):
    first = run(capsys, "suite", "--only", "3,4,9")
    second = run(capsys, "suite", "--only", "3,4,9")
    assert first == second and first[0] == 0
    assert "3/3 criteria passed" in first[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etaforge", "verify", "--which", "strange", "--delta", "E8"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "[PASS] strange E8" in proc.stdout
