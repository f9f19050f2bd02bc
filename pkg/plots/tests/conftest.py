"""Shared fixtures: sweep CSVs produced by the simulator's own CLI.

The plots package consumes the simulator only through its exported CSV
schema, so these fixtures shell out to the `mlosim` command line.
"""

import subprocess
import sys

import pytest

MLOSIM = [sys.executable, "-m", "mlosim.cli"]


def generate(preset_name: str, loads: str, out_dir, duration_s: float, seeds: str = "1"):
    proc = subprocess.run(
        MLOSIM
        + [
            "preset",
            preset_name,
            "--load-grid",
            loads,
            "--seeds",
            seeds,
            "--duration",
            str(duration_s),
            "--jobs",
            "2",
            "--out",
            str(out_dir),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return out_dir / f"{preset_name}_sweep.csv"


@pytest.fixture(scope="session")
def fig2_csv(tmp_path_factory):
    return generate("fig2", "0.25,0.5,1.0", tmp_path_factory.mktemp("fig2"), 8.0)


@pytest.fixture(scope="session")
def fig4_csv(tmp_path_factory):
    return generate("fig4", "0.1,2.5", tmp_path_factory.mktemp("fig4"), 10.0)


@pytest.fixture(scope="session")
def fig5_csv(tmp_path_factory):
    return generate("fig5", "0.1,2.5", tmp_path_factory.mktemp("fig5"), 10.0)
