"""Shared fixtures: real CSV tables generated through the dlpad CLI.

The tables are produced by running the actual command-line tool in a
subprocess, never by importing its internals — the plotting layer only ever
sees the documented CSV interface.
"""

import subprocess
import sys

import pytest


def run_dlpad(argv, out_path):
    cmd = [sys.executable, "-m", "dlpad.cli", *argv, "--out", str(out_path)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0, f"dlpad {' '.join(argv)} failed: {proc.stderr}"
    return str(out_path)


@pytest.fixture(scope="session")
def tables(tmp_path_factory):
    root = tmp_path_factory.mktemp("tables")
    return {
        "collapse": run_dlpad(
            ["collapse", "--nu", "0.9", "--L", "64,128,256"], root / "collapse.csv"
        ),
        "collapse_small": run_dlpad(
            ["collapse", "--nu", "0.9", "--L", "32", "--u-steps", "13"],
            root / "collapse32.csv",
        ),
        "cumulants": run_dlpad(
            ["cumulants", "--nu", "0.3", "--L", "64,128,256,512,1024", "--orders", "2,4,5"],
            root / "cumulants.csv",
        ),
        "phi": run_dlpad(["phi-table"], root / "phi.csv"),
    }
