"""Multi-run studies: scheduler comparison, weight sweep and warm start."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from lte_ga_scheduler.exceptions import InvalidInputError
from lte_ga_scheduler.ga import evolve, generations_to_threshold, operation_estimate
from lte_ga_scheduler.log import simulation as sim_log

from . import report
from .simulation import SimulationState, finish_tti, prepare_tti, simulate

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from lte_ga_scheduler.ga import GaResult
    from lte_ga_scheduler.lte import McsTable
    from lte_ga_scheduler.metrics import ScenarioSummary, TtiRecord

    from .config import ScenarioConfig
    from .simulation import ScenarioRun

__all__ = [
    "WARM_START_TOLERANCE",
    "Comparison",
    "SweepRow",
    "WarmStartReport",
    "WarmStartSample",
    "compare_schedulers",
    "warmstart_study",
    "weight_sweep",
]

WARM_START_TOLERANCE = 0.05
"""A GA arm has converged once its best is within this share of the reference fitness."""


def _median(values: Iterable[float | None]) -> float | None:
    present = [value for value in values if value is not None]
    return float(np.median(present)) if present else None


def _in_memory(config: ScenarioConfig, **changes: Any) -> ScenarioConfig:
    return config.updated(output={"write": False}, **changes)


def _write_study(
    config: ScenarioConfig,
    runs: Sequence[ScenarioRun],
    **sections: Any,
) -> None:
    records: list[TtiRecord] = [record for run in runs for record in run.records]
    with report.RecordWriter.open(config.output.csv_path, config.num_ues) as writer:
        writer.write_all(records)
    report.write_summary(
        config.output.summary_path, config, [run.summary for run in runs], **sections
    )


def _check_writable(config: ScenarioConfig) -> None:
    if config.output.write:
        # fails before any simulation work
        with report.RecordWriter.open(config.output.csv_path, config.num_ues):
            pass


@dataclass(frozen=True)
class Comparison:
    """Scheduler comparison on a shared channel and demand trace."""

    rows: tuple[ScenarioSummary, ...]
    """One per scheduler, in the order asked for."""
    channel_identical: bool
    """Whether every scheduler saw the same CQI matrices."""


def compare_schedulers(
    config: ScenarioConfig,
    schedulers: Sequence[str],
    table: McsTable | None = None,
) -> Comparison:
    """Run `config` once per scheduler with identical seeds.

    Raises:
        InvalidInputError: With fewer than two schedulers.
    """
    if len(schedulers) < 2:
        raise InvalidInputError("a comparison needs at least two schedulers")
    _check_writable(config)
    runs = [simulate(_in_memory(config, scheduler=name), table) for name in schedulers]
    comparison = Comparison(
        rows=tuple(run.summary for run in runs),
        channel_identical=len({run.channel_digests for run in runs}) == 1,
    )
    sim_log.log_study(
        "compare", schedulers=list(schedulers), channel_identical=comparison.channel_identical
    )
    if config.output.write:
        _write_study(config, runs, comparison={"channel_identical": comparison.channel_identical})
    return comparison


@dataclass(frozen=True)
class SweepRow:
    """Fixed-weight run results, medians over the repeats."""

    w1: float
    jain: float | None
    satisfaction: float | None
    average: float


def weight_sweep(
    config: ScenarioConfig,
    w1_grid: Sequence[float],
    repeats: int = 1,
    table: McsTable | None = None,
) -> list[SweepRow]:
    """Run the GA scheduler with weights fixed at each `w1` of the grid.

    Repeats use consecutive `seeds.repeat` values from the configured one.

    Raises:
        ConfigurationError: If a grid value is outside `[0, 1]`.
    """
    if repeats < 1:
        raise InvalidInputError(f"repeats must be >= 1, got {repeats}")
    base = config.seeds.repeat
    grid_configs = [
        _in_memory(config, scheduler="ga_adaptive", weights={"w1": float(w1)}) for w1 in w1_grid
    ]
    _check_writable(config)
    rows: list[SweepRow] = []
    runs: list[ScenarioRun] = []
    for w1, grid_config in zip(w1_grid, grid_configs):
        repeat_runs = [
            simulate(grid_config.updated(seeds={"repeat": base + repeat}), table)
            for repeat in range(repeats)
        ]
        runs.extend(repeat_runs)
        summaries = [run.summary for run in repeat_runs]
        rows.append(
            SweepRow(
                w1=float(w1),
                jain=_median(summary.jain for summary in summaries),
                satisfaction=_median(summary.satisfaction for summary in summaries),
                average=float(np.median([summary.average for summary in summaries])),
            )
        )
    sim_log.log_study("sweep", rows=[asdict(row) for row in rows], repeats=repeats)
    if config.output.write:
        _write_study(config, runs, sweep=rows)
    return rows


@dataclass(frozen=True)
class WarmStartSample:
    """Both GA arms on one post-bootstrap TTI."""

    repeat: int
    tti: int
    cluster: int
    seeded: bool
    """Whether the cache had a pattern for the cluster."""
    warm_generations: int
    """Generations the warm-started arm needed to reach the threshold."""
    cold_generations: int
    warm_operations: float
    """Operation estimate over the generations the arm ran."""
    cold_operations: float


@dataclass(frozen=True)
class WarmStartReport:
    """Generations-to-threshold with and without warm start."""

    samples: tuple[WarmStartSample, ...]
    warm_median: float | None
    cold_median: float | None
    warm_operations_median: float | None
    cold_operations_median: float | None
    classify_operations: int
    """Multiply-adds per classification, `K * d`, independent of the GA size."""


def _threshold(warm: GaResult, cold: GaResult) -> float:
    reference = max(warm.fitness_trace[-1], cold.fitness_trace[-1])
    return reference - WARM_START_TOLERANCE * abs(reference)


def warmstart_study(
    config: ScenarioConfig,
    repeats: int,
    table: McsTable | None = None,
) -> WarmStartReport:
    """Compare warm-started and random-init GA runs on identical contexts.

    On every TTI with a cluster index both arms run with the same GA
    seed, one seeded from the mapping cache, one not. The reference is
    the better of the two final fitnesses, the threshold lies 5% of its
    magnitude below it. The warm arm's pattern drives the simulation.
    """
    if repeats < 1:
        raise InvalidInputError(f"repeats must be >= 1, got {repeats}")
    _check_writable(config)
    base = config.seeds.repeat
    samples: list[WarmStartSample] = []
    records: list[TtiRecord] = []
    size = config.ga.population_size
    for repeat in range(repeats):
        run_config = _in_memory(config, scheduler="ga_adaptive", seeds={"repeat": base + repeat})
        sim_log.before_run(scenario=run_config.name, scheduler="warmstart", repeat=base + repeat)
        state = SimulationState.initial(run_config, table)
        for tti in range(run_config.ttis):
            inputs = prepare_tti(state, tti)
            if inputs.context is None:
                raise InvalidInputError("warm start study needs the GA scheduler")
            ga_config = state.ga_config(tti)
            warm = evolve(ga_config, inputs.context, inputs.warm_start)
            if inputs.cluster is not None:
                cold = evolve(ga_config, inputs.context) if inputs.warm_start else warm
                threshold = _threshold(warm, cold)
                samples.append(
                    WarmStartSample(
                        repeat=base + repeat,
                        tti=tti,
                        cluster=inputs.cluster,
                        seeded=bool(inputs.warm_start),
                        warm_generations=generations_to_threshold(warm.fitness_trace, threshold),
                        cold_generations=generations_to_threshold(cold.fitness_trace, threshold),
                        warm_operations=operation_estimate(
                            warm.generations_used, size, run_config.num_rbs
                        ),
                        cold_operations=operation_estimate(
                            cold.generations_used, size, run_config.num_rbs
                        ),
                    )
                )
            records.append(finish_tti(state, inputs, warm))
    result = WarmStartReport(
        samples=tuple(samples),
        warm_median=_median(sample.warm_generations for sample in samples),
        cold_median=_median(sample.cold_generations for sample in samples),
        warm_operations_median=_median(sample.warm_operations for sample in samples),
        cold_operations_median=_median(sample.cold_operations for sample in samples),
        classify_operations=config.ml.num_clusters * 2 * config.num_ues,
    )
    sim_log.log_study(
        "warmstart",
        samples=len(samples),
        warm_median=result.warm_median,
        cold_median=result.cold_median,
        warm_operations_median=result.warm_operations_median,
        cold_operations_median=result.cold_operations_median,
    )
    if config.output.write:
        with report.RecordWriter.open(config.output.csv_path, config.num_ues) as writer:
            writer.write_all(records)
        report.write_summary(config.output.summary_path, config, [], warmstart=result)
    return result
