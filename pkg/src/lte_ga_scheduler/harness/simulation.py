"""The per-TTI closed loop and whole scenario runs.

Each TTI advances the channel, draws the demand, records it in the
demand database, classifies it, picks the objective weights, warm starts
the GA from the mapping cache, applies the chosen pattern and feeds the
result back into the cache and the PF averages.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler import baselines
from lte_ga_scheduler.exceptions import DegenerateScenarioError, InvalidInputError
from lte_ga_scheduler.fitness import FitnessContext, SchedulerWeights, population_user_rates
from lte_ga_scheduler.ga import evolve
from lte_ga_scheduler.log import simulation as sim_log
from lte_ga_scheduler.lte import (
    UePopulation,
    build_efficiency_matrix,
    generate_demands,
    init_cqi,
    load_mcs_table,
    step_cqi,
)
from lte_ga_scheduler.metrics import TtiRecord, summarize
from lte_ga_scheduler.ml import AdaptationLoop, adapt_weights
from lte_ga_scheduler.utils import derive_seed, make_rng

from . import report

if TYPE_CHECKING:
    from collections.abc import Callable

    from lte_ga_scheduler.fitness import AllocationPattern
    from lte_ga_scheduler.ga import GaConfig, GaResult
    from lte_ga_scheduler.lte import CqiMatrix, DemandVector, McsTable
    from lte_ga_scheduler.metrics import ScenarioSummary

    from .config import ScenarioConfig

__all__ = [
    "ScenarioRun",
    "SimulationState",
    "TtiInputs",
    "finish_tti",
    "prepare_tti",
    "run_scenario",
    "run_tti",
    "simulate",
]

_STATIC_STREAM = 0
_CYCLED_STREAM = 1


def _populations(config: ScenarioConfig) -> tuple[UePopulation, ...]:
    traffic = config.traffic

    def build(fraction: float) -> UePopulation:
        return UePopulation.build(
            config.num_ues, fraction, traffic.demand_levels, traffic.speed_kmh
        )

    if traffic.profile == "regimes":
        return build(1.0), build(0.0), build(traffic.gbr_fraction)
    return (build(traffic.gbr_fraction),)


@dataclass(eq=False)
class SimulationState:
    """Everything a scenario carries from one TTI to the next."""

    config: ScenarioConfig
    table: McsTable
    populations: tuple[UePopulation, ...]
    """One population, or one per demand regime."""
    cqi: CqiMatrix
    channel_rng: np.random.Generator
    adaptation: AdaptationLoop
    pf: baselines.PfState
    channel_digests: list[str] = field(default_factory=list)
    """SHA-256 of the CQI matrix every TTI was scheduled on."""

    @classmethod
    def initial(cls, config: ScenarioConfig, table: McsTable | None = None) -> SimulationState:
        """Fresh state, the channel drawn from the configured channel seed."""
        if table is None:
            table = load_mcs_table(config.mcs_table, cqi_levels=config.cqi_levels)
        seeds = config.seeds
        populations = _populations(config)
        channel_rng = make_rng(derive_seed(seeds.channel, seeds.repeat))
        cqi = init_cqi(
            channel_rng,
            config.num_ues,
            config.num_rbs,
            speeds=populations[0].speeds,
            levels=table.cqi_levels,
            rb_spread=config.channel.rb_spread,
        )
        return cls(
            config=config,
            table=table,
            populations=populations,
            cqi=cqi,
            channel_rng=channel_rng,
            adaptation=AdaptationLoop(config.ml, seed=derive_seed(seeds.ml, seeds.repeat)),
            pf=baselines.PfState.initial(
                config.num_ues, time_constant=config.pf.time_constant, floor=config.pf.floor
            ),
        )

    def population_at(self, tti: int) -> UePopulation:
        """UE population of `tti` under the demand profile."""
        period = self.config.traffic.regime_period
        return self.populations[(tti // period) % len(self.populations)]

    def demand_seed(self, tti: int) -> int:
        """Seed of the demand draw of `tti`."""
        seeds, traffic = self.config.seeds, self.config.traffic
        if traffic.profile == "cycled":
            cycle = traffic.cycle_seeds[tti % len(traffic.cycle_seeds)]
            return derive_seed(seeds.traffic, seeds.repeat, _CYCLED_STREAM, cycle)
        return derive_seed(seeds.traffic, seeds.repeat, _STATIC_STREAM, tti)

    def ga_config(self, tti: int) -> GaConfig:
        """GA parameters of `tti`, each TTI gets its own stream."""
        ga = self.config.ga
        return ga.copy(update={"seed": derive_seed(ga.seed, self.config.seeds.repeat, tti)})


@dataclass(frozen=True, eq=False)
class TtiInputs:
    """What the scheduler knows when it decides a TTI."""

    tti: int
    demand: DemandVector
    cluster: int | None
    weights: SchedulerWeights | None
    context: FitnessContext | None
    """Fitness context, built only for the GA scheduler."""
    warm_start: tuple[AllocationPattern, ...]


def _weights(config: ScenarioConfig, demand: DemandVector) -> SchedulerWeights:
    if config.weights.w1 is not None:
        return SchedulerWeights.from_w1(config.weights.w1)
    return adapt_weights(demand)


def prepare_tti(state: SimulationState, tti: int) -> TtiInputs:
    """Advance channel and demand, classify and look up the cache.

    Raises:
        DegenerateScenarioError: With the TTI index, if the fitness
            context has nothing to optimize.
    """
    config = state.config
    population = state.population_at(tti)
    state.cqi = step_cqi(state.cqi, population.speeds, state.channel_rng)
    state.channel_digests.append(hashlib.sha256(state.cqi.values.tobytes()).hexdigest())
    demand = generate_demands(population, state.demand_seed(tti), config.traffic.perturbation)
    if config.scheduler != "ga_adaptive":
        return TtiInputs(
            tti=tti, demand=demand, cluster=None, weights=None, context=None, warm_start=()
        )
    state.adaptation.observe(demand)
    cluster = state.adaptation.classify(demand)
    weights = _weights(config, demand)
    entry = None if cluster is None else state.adaptation.cache.lookup(cluster)
    try:
        context = FitnessContext.build(state.cqi, state.table, demand, weights)
    except DegenerateScenarioError as exc:
        raise DegenerateScenarioError(str(exc), tti=tti) from exc
    return TtiInputs(
        tti=tti,
        demand=demand,
        cluster=cluster,
        weights=weights,
        context=context,
        warm_start=() if entry is None else (entry.pattern,),
    )


def finish_tti(
    state: SimulationState, inputs: TtiInputs, result: GaResult | None = None
) -> TtiRecord:
    """Apply the TTI's pattern, update cache, PF averages and models.

    Args:
        state: Mutated in place.
        inputs: From `prepare_tti()`.
        result: GA outcome, required for the GA scheduler.
    """
    config = state.config
    pattern: AllocationPattern
    if config.scheduler == "ga_adaptive":
        if result is None:
            raise InvalidInputError("the GA scheduler needs a GA result to finish a TTI")
        pattern = result.best_pattern
        if inputs.cluster is not None:
            state.adaptation.cache.update(inputs.cluster, result, inputs.tti)
    elif config.scheduler == "max_tp":
        pattern = baselines.max_tp_schedule(build_efficiency_matrix(state.cqi, state.table))
    else:
        pattern = baselines.pf_schedule(build_efficiency_matrix(state.cqi, state.table), state.pf)
    per_ue = population_user_rates(pattern.genes, state.cqi, state.table)
    state.pf = baselines.pf_update(state.pf, per_ue)
    if config.scheduler == "ga_adaptive":
        state.adaptation.end_of_tti(inputs.tti)
    record = TtiRecord(
        tti=inputs.tti,
        scheduler=config.scheduler,
        per_ue_bits=per_ue,
        demand_bits=inputs.demand.bits_per_tti,
        gbr_mask=inputs.demand.gbr_mask,
        weights=inputs.weights,
        cluster=inputs.cluster,
        generations_used=None if result is None else result.generations_used,
        combined_fitness=None if result is None else result.best_fitness.combined,
    )
    sim_log.log_tti(record)
    return record


def run_tti(state: SimulationState, tti: int) -> tuple[TtiRecord, SimulationState]:
    """Schedule one TTI with the configured scheduler."""
    inputs = prepare_tti(state, tti)
    result = None
    if inputs.context is not None:
        result = evolve(state.ga_config(tti), inputs.context, inputs.warm_start)
    return finish_tti(state, inputs, result), state


@dataclass(frozen=True, eq=False)
class ScenarioRun:
    """Records and summary of one scenario run."""

    config: ScenarioConfig
    records: tuple[TtiRecord, ...]
    summary: ScenarioSummary
    channel_digests: tuple[str, ...]
    state: SimulationState


def simulate(
    config: ScenarioConfig,
    table: McsTable | None = None,
    on_record: Callable[[TtiRecord], None] | None = None,
) -> ScenarioRun:
    """Run every TTI of `config` in memory.

    Args:
        config: Scenario.
        table: MCS table, loaded from the config when omitted.
        on_record: Called with every record as soon as it's produced.
    """
    sim_log.before_run(
        scenario=config.name, scheduler=config.scheduler, repeat=config.seeds.repeat
    )
    state = SimulationState.initial(config, table)
    records = []
    for tti in range(config.ttis):
        record, state = run_tti(state, tti)
        if on_record is not None:
            on_record(record)
        records.append(record)
    summary = summarize(records)
    sim_log.after_run(summary)
    return ScenarioRun(
        config=config,
        records=tuple(records),
        summary=summary,
        channel_digests=tuple(state.channel_digests),
        state=state,
    )


def run_scenario(config: ScenarioConfig, table: McsTable | None = None) -> ScenarioRun:
    """Run `config` and write its CSV, summary and optional demand database.

    Raises:
        OutputError: If the output files can't be created, before any
            TTI is simulated.
    """
    if not config.output.write:
        return simulate(config, table)
    with report.RecordWriter.open(config.output.csv_path, config.num_ues) as writer:
        run = simulate(config, table, on_record=writer.write)
    report.write_summary(config.output.summary_path, config, [run.summary])
    db_path = config.output.demand_db_path
    if db_path is not None and len(run.state.adaptation.database):
        run.state.adaptation.database.export(db_path)
    return run
