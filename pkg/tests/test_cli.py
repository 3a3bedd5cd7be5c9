import json
import subprocess
import sys

import pytest

from wzpi.cli import run

PAIR_TEXT = """\
# Chu-Vandermonde: sum_k (n+1) (-n)_k / (2)_k = 1
prefactor n + 1
poch -n k 1
poch 2 k -1
certificate (k + 1)/(n + 1)
"""


def test_verify_builtin():
    r = run(["verify", "--pair", "ramanujan-eq3", "--symbolic", "--grid", "12"])
    assert r.exit_code == 0
    assert "orientation: sign-flipped" in r.stdout
    assert "grid: checked=169 skipped=0 failed=0" in r.stdout


def test_verify_json():
    r = run(["verify", "--pair", "ramanujan-eq3", "--symbolic", "--grid", "3", "--json"])
    assert json.loads(r.stdout) == {
        "orientation": "sign-flipped",
        "symbolic_zero": True,
        "grid": {"checked": 16, "skipped": 0, "failed": 0},
    }


def test_verify_pair_file(tmp_path):
    good = tmp_path / "pair.txt"
    good.write_text(PAIR_TEXT)
    r = run(["verify", "--pair-file", str(good), "--grid", "6", "--json"])
    assert r.exit_code == 0
    assert json.loads(r.stdout)["orientation"] == "as-printed"
    bad = tmp_path / "bad.txt"
    bad.write_text(PAIR_TEXT.replace("(k + 1)", "(k + 2)"))
    r = run(["verify", "--pair-file", str(bad), "--symbolic"])
    assert r.exit_code == 1
    assert "orientation: fails" in r.stdout


def test_sum():
    r = run(["sum", "--n", "1", "--json"])
    assert r.exit_code == 0
    assert r.stdout == '{"lhs":"3/2","rhs":"3/2","equal":true}\n'
    r = run(["sum", "--n", "2"])
    assert r.stdout == "lhs = 15/8\nrhs = 15/8\nequal = true\n"


def test_pi():
    r = run(["pi", "--digits", "10"])
    assert (r.exit_code, r.stdout) == (0, "3.1415926535\n")
    r = run(["pi", "--digits", "30", "--oracle", "--json"])
    d = json.loads(r.stdout)
    assert d["digits"] == "3.141592653589793238462643383279"
    assert d["oracle_agrees"] is True and r.exit_code == 0


def test_bauer_and_limit():
    r = run(["bauer", "--terms", "1000", "--prec", "128", "--json"])
    d = json.loads(r.stdout)
    assert r.exit_code == 0
    assert set(d) >= {"N", "partial_sum", "next_term_bound", "two_over_pi_ref", "abs_error", "bound_satisfied"}
    assert d["bound_satisfied"] is True
    r = run(["limit", "--terms", "1000", "--json"])
    assert json.loads(r.stdout)["summand_match"] is True


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["sum"],
        ["sum", "--n", "-1"],
        ["pi", "--digits", "0"],
        ["verify", "--pair", "nope"],
        ["verify", "--pair", "ramanujan-eq3", "--bogus"],
    ],
)
def test_usage_errors(argv):
    r = run(argv)
    assert r.exit_code == 2
    assert "usage" in r.stderr


def test_missing_pair_file_is_usage_error(tmp_path):
    r = run(["verify", "--pair-file", str(tmp_path / "missing.txt")])
    assert r.exit_code == 2


def test_deterministic_output():
    argv = ["limit", "--terms", "500", "--json"]
    assert run(argv).stdout == run(argv).stdout


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wzpi", "sum", "--n", "3", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["equal"] is True
