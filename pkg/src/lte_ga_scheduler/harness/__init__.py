"""Scenario configuration, the closed scheduling loop, studies and reports."""
from .config import PRESETS, SCHEDULERS, ScenarioConfig, load_config
from .simulation import ScenarioRun, SimulationState, run_scenario, run_tti, simulate
from .studies import (
    Comparison,
    SweepRow,
    WarmStartReport,
    compare_schedulers,
    warmstart_study,
    weight_sweep,
)

__all__ = [
    "PRESETS",
    "SCHEDULERS",
    "Comparison",
    "ScenarioConfig",
    "ScenarioRun",
    "SimulationState",
    "SweepRow",
    "WarmStartReport",
    "compare_schedulers",
    "load_config",
    "run_scenario",
    "run_tti",
    "simulate",
    "warmstart_study",
    "weight_sweep",
]
