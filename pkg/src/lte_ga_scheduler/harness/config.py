"""Scenario configuration.

A scenario is described by a TOML file whose keys mirror the
`ScenarioConfig` model, nested sections included:

    ```toml
    preset = "mixed_gbr"
    num_ues = 25
    ttis = 20
    scheduler = "ga_adaptive"

    [traffic]
    gbr_fraction = 0.5

    [channel]
    rb_spread = 4

    [ga]
    population_size = 100
    ```

Values are layered: a named preset first, then the file's keys, then
`--set dotted.key=value` overrides from the command line. Every key
left out takes the model default.
"""
from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

import msgspec
from pydantic import BaseModel, Field, ValidationError, root_validator, validator

from lte_ga_scheduler.constants import BANDWIDTH_RBS, DEFAULT_CQI_LEVELS
from lte_ga_scheduler.exceptions import ConfigurationError
from lte_ga_scheduler.ga import GaConfig
from lte_ga_scheduler.lte.traffic import DEFAULT_PERTURBATION
from lte_ga_scheduler.ml import MlConfig

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

__all__ = [
    "PRESETS",
    "SCHEDULERS",
    "ChannelConfig",
    "OutputConfig",
    "PfConfig",
    "ScenarioConfig",
    "SeedConfig",
    "TrafficConfig",
    "WeightsConfig",
    "load_config",
    "parse_override",
]

SchedulerName = Literal["ga_adaptive", "max_tp", "pf"]
SCHEDULERS: tuple[str, ...] = ("ga_adaptive", "max_tp", "pf")

PRESETS: dict[str, dict[str, Any]] = {
    "table1": {},
    "non_gbr_10mhz": {"bandwidth": "10MHz"},
    "mixed_gbr": {"traffic": {"gbr_fraction": 0.5}, "channel": {"rb_spread": 4}},
    "high_mobility_gbr": {"num_ues": 30, "traffic": {"gbr_fraction": 1.0, "speed_kmh": 200.0}},
}
"""Scenario families, applied beneath the config file's own keys."""


class _Section(BaseModel):
    class Config:
        allow_mutation = False
        extra = "forbid"


class TrafficConfig(_Section):
    """The `[traffic]` section."""

    gbr_fraction: float = Field(0.0, ge=0.0, le=1.0)
    """Share of GBR UEs, the first UEs are GBR."""
    demand_levels: list[float] = [128e3, 256e3, 384e3]
    """GBR demands in bits/s, assigned to GBR UEs in turn."""
    speed_kmh: float = Field(5.0, ge=0.0)
    """Speed of every UE."""
    perturbation: tuple[float, float] = DEFAULT_PERTURBATION
    """Range of the per TTI multiplicative factor on GBR demands."""
    profile: Literal["static", "cycled", "regimes"] = "static"
    """`static`: a fresh perturbation each TTI. `cycled`: demand seeds
    repeat through `cycle_seeds`. `regimes`: the GBR mask rotates through
    all-GBR, none and `gbr_fraction` every `regime_period` TTIs."""
    cycle_seeds: list[int] = [0, 1, 2]
    regime_period: int = Field(5, ge=1)

    @validator("demand_levels")
    def _positive_levels(cls, value: list[float]) -> list[float]:  # noqa: N805
        if not value or any(level <= 0 for level in value):
            raise ValueError("demand levels must be a non-empty list of positive rates")
        return value

    @validator("perturbation")
    def _ordered_range(cls, value: tuple[float, float]) -> tuple[float, float]:  # noqa: N805
        if not 0 < value[0] <= value[1]:
            raise ValueError("perturbation range must satisfy 0 < low <= high")
        return value

    @validator("cycle_seeds")
    def _some_seeds(cls, value: list[int]) -> list[int]:  # noqa: N805
        if not value:
            raise ValueError("cycle_seeds must not be empty")
        return value


class ChannelConfig(_Section):
    """The `[channel]` section."""

    rb_spread: int | None = Field(None, ge=0)
    """Per RB spread around a per UE geometry level, `None` draws every
    entry uniformly and independently."""


class WeightsConfig(_Section):
    """The `[weights]` section."""

    w1: float | None = Field(None, ge=0.0, le=1.0)
    """Fixed `w1` (and `w2 = 1 - w1`) for every TTI, `None` adapts per TTI."""


class PfConfig(_Section):
    """The `[pf]` section."""

    time_constant: float = Field(10.0, ge=1.0)
    """`t_c`, TTIs."""
    floor: float = Field(1.0, gt=0.0)
    """`ε`, lower bound of the averaged throughput, bits/TTI."""


class SeedConfig(_Section):
    """The `[seeds]` section, one base seed per random stream."""

    channel: int = 1
    traffic: int = 2
    ml: int = 3
    repeat: int = 0
    """Mixed into every stream, studies vary it to get independent runs."""


class OutputConfig(_Section):
    """The `[output]` section."""

    directory: Path = Path("results")
    csv: str = "records.csv"
    summary: str = "summary.json"
    demand_db: str | None = None
    """File name to export the demand database to at the end of the run."""
    write: bool = True
    """Studies disable this to run scenarios in memory only."""

    @property
    def csv_path(self) -> Path:
        """Where the per-TTI CSV goes."""
        return self.directory / self.csv

    @property
    def summary_path(self) -> Path:
        """Where the summary document goes."""
        return self.directory / self.summary

    @property
    def demand_db_path(self) -> Path | None:
        """Where the demand database goes, if exported."""
        return None if self.demand_db is None else self.directory / self.demand_db


class ScenarioConfig(_Section):
    """A complete scenario, the defaults reproduce the reference setup.

    25 UEs on 25 RBs (5 MHz), 20 TTIs, 5 km/h, best effort traffic only.
    """

    preset: str | None = None
    """Name of the preset the config was layered on, informational."""
    name: str = "scenario"
    num_ues: int = Field(25, ge=1)
    """`M`."""
    bandwidth: str = "5MHz"
    """Bandwidth label, one of `BANDWIDTH_RBS`."""
    num_rbs: int = Field(None, ge=1)  # type: ignore[assignment]
    """`N`, defaults to the RB count of `bandwidth`."""
    ttis: int = Field(20, ge=1)
    cqi_levels: int = Field(DEFAULT_CQI_LEVELS, ge=1)
    """`Q`."""
    mcs_table: Path | None = None
    """MCS table file, falls back to `SIM_MCS_TABLE` and the packaged table."""
    scheduler: SchedulerName = "ga_adaptive"
    channel: ChannelConfig = ChannelConfig()
    traffic: TrafficConfig = TrafficConfig()
    weights: WeightsConfig = WeightsConfig()
    ga: GaConfig = GaConfig()
    ml: MlConfig = MlConfig()
    pf: PfConfig = PfConfig()
    seeds: SeedConfig = SeedConfig()
    output: OutputConfig = OutputConfig()

    @validator("bandwidth")
    def _known_bandwidth(cls, value: str) -> str:  # noqa: N805
        if value not in BANDWIDTH_RBS:
            raise ValueError(f"bandwidth must be one of {', '.join(BANDWIDTH_RBS)}")
        return value

    @validator("preset")
    def _known_preset(cls, value: str | None) -> str | None:  # noqa: N805
        if value is not None and value not in PRESETS:
            raise ValueError(f"preset must be one of {', '.join(PRESETS)}")
        return value

    @root_validator(skip_on_failure=True)
    def _default_rbs(cls, values: dict[str, Any]) -> dict[str, Any]:  # noqa: N805
        if values.get("num_rbs") is None:
            values["num_rbs"] = BANDWIDTH_RBS[values["bandwidth"]]
        return values

    def updated(self, **changes: Any) -> ScenarioConfig:
        """Copy with `changes`, validated like a fresh config.

        Nested sections can be given as mappings, which are merged into
        the current section values.
        """
        values = self.dict()
        if "bandwidth" in changes and "num_rbs" not in changes:
            values["num_rbs"] = None
        return _validate(_deep_merge(values, changes))


def _deep_merge(base: Mapping[str, Any], changes: Mapping[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in changes.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _validate(values: Mapping[str, Any]) -> ScenarioConfig:
    try:
        return ScenarioConfig.parse_obj(values)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid scenario config:\n{exc}") from exc


def parse_override(override: str) -> dict[str, Any]:
    """Turn `a.b=value` into `{"a": {"b": value}}`.

    The value is read as a TOML value (numbers, booleans, quoted strings,
    arrays), falling back to the raw text.
    """
    key, sep, raw = override.partition("=")
    if not sep or not key.strip():
        raise ConfigurationError(f"override must look like key=value, got {override!r}")
    try:
        value: Any = msgspec.toml.decode(f"value = {raw.strip()}".encode())["value"]
    except msgspec.DecodeError:
        value = raw.strip()
    for part in reversed(key.strip().split(".")):
        value = {part: value}
    return value  # type: ignore[no-any-return]


def load_config(
    path: Path | str | None = None,
    preset: str | None = None,
    overrides: Iterable[str] = (),
) -> ScenarioConfig:
    """Build a scenario from a preset, a TOML file and overrides.

    Args:
        path: TOML file, optional.
        preset: Preset name, overrides a `preset` key of the file.
        overrides: `dotted.key=value` strings, applied last.

    Raises:
        ConfigurationError: If the file can't be read or decoded, or the
            layered values don't validate.
    """
    values: dict[str, Any] = {}
    if path is not None:
        try:
            values = msgspec.toml.decode(Path(path).read_bytes())
        except OSError as exc:
            raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
        except msgspec.DecodeError as exc:
            raise ConfigurationError(f"cannot decode config file {path}: {exc}") from exc
    preset = preset or values.get("preset")
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigurationError(f"unknown preset {preset!r}, known: {', '.join(PRESETS)}")
        values = _deep_merge(PRESETS[preset], {**values, "preset": preset})
    for override in overrides:
        values = _deep_merge(values, parse_override(override))
    return _validate(values)
