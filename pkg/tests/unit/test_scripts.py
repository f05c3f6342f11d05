"""Tests for the `lte-sched` command line."""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from lte_ga_scheduler.scripts import build_parser, main

if TYPE_CHECKING:
    from pathlib import Path

SMALL = [
    "--num-ues",
    "4",
    "--ttis",
    "3",
    "--set",
    "ga.population_size=10",
    "--set",
    "ga.max_generations=5",
]


def test_help(capsys: pytest.CaptureFixture[str]) -> None:
    """Help exits cleanly."""
    assert main(["--help"]) == 0
    assert "lte-sched" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["simulate", "--ttis", "many"],
        ["compare", "--schedulers", "max_tp,fifo"],
        ["sweep", "--w1-grid", "0,half"],
    ],
)
def test_usage_errors(argv: list[str]) -> None:
    """Bad command lines exit 2."""
    assert main(argv) == 2


def test_flags_become_overrides() -> None:
    """Dedicated flags parse to the documented types."""
    args = build_parser().parse_args(
        ["sweep", "--preset", "mixed_gbr", "--w1", "0.5", "--w1-grid", "0,0.5", "--no-write"]
    )
    assert args.w1 == 0.5
    assert args.w1_grid == [0.0, 0.5]
    assert args.no_write


def test_simulate(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Writes the CSV and prints the summary table."""
    status = main(["simulate", "--preset", "mixed_gbr", *SMALL, "--output-dir", str(tmp_path)])
    assert status == 0
    assert len((tmp_path / "records.csv").read_text().splitlines()) == 4
    out = capsys.readouterr().out
    assert out.splitlines()[0].split() == [
        "scheduler",
        "peak",
        "average",
        "edge",
        "jain",
        "satisfaction",
    ]
    assert "ga_adaptive" in out


def test_compare(capsys: pytest.CaptureFixture[str]) -> None:
    """Shared channel reported."""
    argv = ["compare", "--preset", "mixed_gbr", *SMALL, "--schedulers", "max_tp,pf", "--no-write"]
    assert main(argv) == 0
    assert "channel identical: True" in capsys.readouterr().out


def test_invalid_config_exit_code() -> None:
    """Configuration errors exit 2."""
    assert main(["simulate", "--set", "num_ues=0", "--no-write"]) == 2
    assert main(["simulate", "--bandwidth", "7MHz", "--no-write"]) == 2


def test_degenerate_exit_code(tmp_path: Path) -> None:
    """A scenario with nothing to optimize exits 3."""
    table = tmp_path / "silent.csv"
    table.write_text("mcs_index,min_cqi,rate_bits_per_rb_per_tti\n0,1,0\n")
    argv = ["simulate", *SMALL, "--set", f"mcs_table='{table}'", "--no-write"]
    assert main(argv) == 3


def test_output_exit_code(tmp_path: Path) -> None:
    """Unwritable output exits 4."""
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    assert main(["simulate", *SMALL, "--output-dir", str(blocker / "out")]) == 4


def test_cluster(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Offline clustering of an exported database."""
    argv = [
        "simulate",
        "--preset",
        "mixed_gbr",
        *SMALL,
        "--ttis",
        "6",
        "--set",
        "output.demand_db='demands.txt'",
        "--output-dir",
        str(tmp_path),
    ]
    assert main(argv) == 0
    labels = tmp_path / "labels.txt"
    assert main(["cluster", str(tmp_path / "demands.txt"), "--k", "2", "--labels-out", str(labels)]) == 0
    assert np.loadtxt(labels, dtype=int).shape == (6,)
    out = capsys.readouterr().out
    assert "inertia:" in out
    assert "centroid" in out
    assert main(["cluster", str(tmp_path / "missing.txt")]) == 4
