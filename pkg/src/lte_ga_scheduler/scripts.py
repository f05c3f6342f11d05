"""The `lte-sched` command line entry point.

Subcommands:

- `simulate <config>`: run one scenario, write its CSV and summary.
- `compare <config>`: run several schedulers on the same channel trace.
- `sweep <config> --w1-grid 0,0.5,1`: GA scheduler with fixed weights.
- `warmstart <config> --repeats 20`: GA with and without warm start.
- `cluster <demand-db> --k 3`: offline k-means over an exported database.

Reports go to stdout, logs to stderr. The exit status is the
`exit_code` of the error that stopped the command, 0 on success.
"""
from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import structlog

from lte_ga_scheduler import log
from lte_ga_scheduler.exceptions import ConfigurationError, LteGaSchedulerError, OutputError
from lte_ga_scheduler.harness import (
    PRESETS,
    SCHEDULERS,
    compare_schedulers,
    load_config,
    run_scenario,
    warmstart_study,
    weight_sweep,
)
from lte_ga_scheduler.ml import DemandDatabase, kmeans_fit

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from lte_ga_scheduler.harness import ScenarioConfig
    from lte_ga_scheduler.metrics import ScenarioSummary

__all__ = ["build_parser", "main"]

LOGGER = structlog.get_logger()

_SUMMARY_COLUMNS = ("scheduler", "peak", "average", "edge", "jain", "satisfaction")


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _print_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    lines = [list(header), *([_cell(value) for value in row] for row in rows)]
    widths = [max(len(line[col]) for line in lines) for col in range(len(header))]
    for line in lines:
        print("  ".join(text.rjust(width) for text, width in zip(line, widths)).rstrip())


def _print_summaries(summaries: Iterable[ScenarioSummary]) -> None:
    _print_table(
        _SUMMARY_COLUMNS,
        ([getattr(summary, column) for column in _SUMMARY_COLUMNS] for summary in summaries),
    )


def _w1_grid(text: str) -> list[float]:
    try:
        return [float(value) for value in text.split(",") if value.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma separated list of numbers: {text}") from exc


def _scheduler_list(text: str) -> list[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in SCHEDULERS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown schedulers: {', '.join(unknown)}")
    return names


def _scenario_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", type=Path, nargs="?", help="scenario TOML file")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="scenario family")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key, e.g. ga.population_size=50, repeatable",
    )
    parser.add_argument("--scheduler", choices=SCHEDULERS)
    parser.add_argument("--ttis", type=int)
    parser.add_argument("--num-ues", type=int)
    parser.add_argument("--bandwidth")
    parser.add_argument("--w1", type=float, help="fix the objective weights")
    parser.add_argument("--repeat", type=int, help="seed repeat index")
    parser.add_argument("--output-dir", type=Path)
    parser.add_argument("--no-write", action="store_true", help="don't write output files")


_FLAG_KEYS = {
    "scheduler": "scheduler",
    "ttis": "ttis",
    "num_ues": "num_ues",
    "bandwidth": "bandwidth",
    "w1": "weights.w1",
    "repeat": "seeds.repeat",
}


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    overrides = list(args.overrides)
    for flag, key in _FLAG_KEYS.items():
        value = getattr(args, flag)
        if value is not None:
            overrides.append(f"{key}={value!r}" if isinstance(value, str) else f"{key}={value}")
    config = load_config(args.config, preset=args.preset, overrides=overrides)
    output: dict[str, Any] = {}
    if args.output_dir is not None:
        output["directory"] = args.output_dir
    if args.no_write:
        output["write"] = False
    return config.updated(output=output) if output else config


def build_parser() -> argparse.ArgumentParser:
    """Parser of every subcommand."""
    parser = argparse.ArgumentParser(
        prog="lte-sched", description="Adaptive GA downlink scheduler simulations."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="run one scenario")
    _scenario_arguments(simulate)

    compare = commands.add_parser("compare", help="compare schedulers on one channel trace")
    _scenario_arguments(compare)
    compare.add_argument(
        "--schedulers", type=_scheduler_list, default=list(SCHEDULERS), help="comma separated"
    )

    sweep = commands.add_parser("sweep", help="GA scheduler over a grid of fixed weights")
    _scenario_arguments(sweep)
    sweep.add_argument("--w1-grid", type=_w1_grid, default=[0.0, 0.25, 0.5, 0.75, 1.0])
    sweep.add_argument("--repeats", type=int, default=1)

    warmstart = commands.add_parser("warmstart", help="warm started against random init GA")
    _scenario_arguments(warmstart)
    warmstart.add_argument("--repeats", type=int, default=20)

    cluster = commands.add_parser("cluster", help="k-means over an exported demand database")
    cluster.add_argument("database", type=Path, help="demand database file")
    cluster.add_argument("--k", type=int, default=3)
    cluster.add_argument("--seed", type=int, default=0)
    cluster.add_argument("--labels-out", type=Path, help="write one cluster index per row")
    return parser


def _simulate(args: argparse.Namespace) -> None:
    run = run_scenario(_scenario(args))
    _print_summaries([run.summary])


def _compare(args: argparse.Namespace) -> None:
    comparison = compare_schedulers(_scenario(args), args.schedulers)
    _print_summaries(comparison.rows)
    print(f"channel identical: {comparison.channel_identical}")


def _sweep(args: argparse.Namespace) -> None:
    rows = weight_sweep(_scenario(args), args.w1_grid, repeats=args.repeats)
    _print_table(
        ("w1", "jain", "satisfaction", "average"),
        ((row.w1, row.jain, row.satisfaction, row.average) for row in rows),
    )


def _warmstart(args: argparse.Namespace) -> None:
    result = warmstart_study(_scenario(args), repeats=args.repeats)
    _print_table(
        ("arm", "median generations", "median operations"),
        [
            ("warm", result.warm_median, result.warm_operations_median),
            ("cold", result.cold_median, result.cold_operations_median),
        ],
    )
    print(f"samples: {len(result.samples)}, classify operations: {result.classify_operations}")


def _cluster(args: argparse.Namespace) -> None:
    model = kmeans_fit(DemandDatabase.load(args.database), args.k, seed=args.seed)
    _print_table(
        ("cluster", "size", "centroid"),
        (
            (index, int(size), " ".join(f"{value:.6g}" for value in centroid))
            for index, (size, centroid) in enumerate(zip(model.sizes, model.centroids))
        ),
    )
    print(f"inertia: {model.inertia:.6f}")
    if args.labels_out is not None:
        try:
            np.savetxt(args.labels_out, model.labels, fmt="%d")
        except OSError as exc:
            raise OutputError(f"cannot write labels to {args.labels_out}: {exc}") from exc


_COMMANDS = {
    "simulate": _simulate,
    "compare": _compare,
    "sweep": _sweep,
    "warmstart": _warmstart,
    "cluster": _cluster,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run a subcommand, return the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ConfigurationError.exit_code if exc.code else 0
    log.configure(log.default_processors)
    try:
        _COMMANDS[args.command](args)
    except LteGaSchedulerError as exc:
        LOGGER.error("Command failed", command=args.command, exc_info=exc)
        return exc.exit_code
    except OSError as exc:
        LOGGER.error("Command failed", command=args.command, exc_info=exc)
        return OutputError.exit_code
    return 0
