import subprocess
import sys
from pathlib import Path

import pytest

from wzpi.wz_verify import parse_pair, ramanujan_eq3_pair

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(DEMOS.glob("*.py")), ids=lambda p: p.name)
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(script)], capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout


def test_shipped_pair_file_matches_builtin():
    assert parse_pair((DEMOS / "ramanujan-eq3.pair").read_text()) == ramanujan_eq3_pair()
