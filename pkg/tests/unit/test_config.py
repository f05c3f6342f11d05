"""Tests for scenario config layering and validation."""
from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from lte_ga_scheduler.exceptions import ConfigurationError
from lte_ga_scheduler.harness.config import PRESETS, ScenarioConfig, load_config, parse_override

if TYPE_CHECKING:
    from pathlib import Path


def test_defaults() -> None:
    """The reference setup."""
    config = ScenarioConfig()
    assert (config.num_ues, config.num_rbs, config.ttis) == (25, 25, 20)
    assert config.bandwidth == "5MHz"
    assert config.traffic.speed_kmh == 5.0
    assert config.traffic.gbr_fraction == 0.0
    assert config.scheduler == "ga_adaptive"
    assert config.weights.w1 is None
    assert config.channel.rb_spread is None


def test_bandwidth_sets_rbs() -> None:
    """`N` follows the bandwidth unless given."""
    assert ScenarioConfig(bandwidth="10MHz").num_rbs == 50
    assert ScenarioConfig(bandwidth="10MHz", num_rbs=7).num_rbs == 7
    assert ScenarioConfig().updated(bandwidth="20MHz").num_rbs == 100


@pytest.mark.parametrize("preset", sorted(PRESETS))
def test_presets_validate(preset: str) -> None:
    """Every preset is a valid scenario."""
    assert load_config(preset=preset).preset == preset


def test_preset_values() -> None:
    """Presets set the scenario family."""
    assert load_config(preset="non_gbr_10mhz").num_rbs == 50
    assert load_config(preset="mixed_gbr").traffic.gbr_fraction == 0.5
    assert load_config(preset="mixed_gbr").channel.rb_spread == 4
    assert load_config(preset="table1").channel.rb_spread is None
    high = load_config(preset="high_mobility_gbr")
    assert (high.num_ues, high.traffic.speed_kmh, high.traffic.gbr_fraction) == (30, 200.0, 1.0)


@pytest.mark.parametrize(
    ("override", "expected"),
    [
        ("ttis=7", {"ttis": 7}),
        ("ga.population_size=50", {"ga": {"population_size": 50}}),
        ("traffic.gbr_fraction=0.25", {"traffic": {"gbr_fraction": 0.25}}),
        ("bandwidth=10MHz", {"bandwidth": "10MHz"}),
        ("bandwidth='3MHz'", {"bandwidth": "3MHz"}),
        ("traffic.cycle_seeds=[4, 5]", {"traffic": {"cycle_seeds": [4, 5]}}),
        ("output.write=false", {"output": {"write": False}}),
        ("channel.rb_spread=2", {"channel": {"rb_spread": 2}}),
    ],
)
def test_parse_override(override: str, expected: dict) -> None:
    """TOML values, raw text otherwise."""
    assert parse_override(override) == expected


@pytest.mark.parametrize("override", ["ttis", "=3", " =3"])
def test_parse_override_rejects(override: str) -> None:
    """Only `key=value`."""
    with pytest.raises(ConfigurationError):
        parse_override(override)


def test_layering(tmp_path: Path) -> None:
    """Preset, then file, then overrides."""
    path = tmp_path / "scenario.toml"
    path.write_text(
        'preset = "mixed_gbr"\nnum_ues = 8\n\n[traffic]\nspeed_kmh = 30.0\n\n[ga]\nseed = 9\n'
    )
    config = load_config(path, overrides=["num_ues=4", "ga.population_size=40"])
    assert config.preset == "mixed_gbr"
    assert config.traffic.gbr_fraction == 0.5
    assert config.traffic.speed_kmh == 30.0
    assert config.num_ues == 4
    assert (config.ga.seed, config.ga.population_size) == (9, 40)


def test_explicit_preset_wins(tmp_path: Path) -> None:
    """The argument replaces the file's preset."""
    path = tmp_path / "scenario.toml"
    path.write_text('preset = "mixed_gbr"\n')
    assert load_config(path, preset="non_gbr_10mhz").traffic.gbr_fraction == 0.0


@pytest.mark.parametrize(
    "content",
    [
        "num_ues = 0\n",
        'bandwidth = "7MHz"\n',
        "unknown_key = 1\n",
        "[traffic]\ngbr_fraction = 1.5\n",
        "[traffic]\nperturbation = [1.2, 0.8]\n",
        "[ga]\nelite_count = 500\n",
        "[channel]\nrb_spread = -1\n",
        'preset = "nope"\n',
        "num_ues = \n",
    ],
)
def test_invalid_files(tmp_path: Path, content: str) -> None:
    """Bad values surface as configuration errors."""
    path = tmp_path / "scenario.toml"
    path.write_text(content)
    with pytest.raises(ConfigurationError):
        load_config(path)


def test_missing_file(tmp_path: Path) -> None:
    """Unreadable files are configuration errors."""
    with pytest.raises(ConfigurationError, match="cannot read"):
        load_config(tmp_path / "missing.toml")


def test_updated_merges_sections() -> None:
    """Nested changes keep the other keys."""
    config = ScenarioConfig().updated(ga={"population_size": 30}, traffic={"gbr_fraction": 1.0})
    assert config.ga.population_size == 30
    assert config.ga.max_generations == ScenarioConfig().ga.max_generations
    assert config.traffic.gbr_fraction == 1.0
    with pytest.raises(ConfigurationError):
        config.updated(ttis=0)


def test_output_paths(tmp_path: Path) -> None:
    """Files go under the output directory."""
    config = ScenarioConfig().updated(output={"directory": tmp_path, "demand_db": "db.txt"})
    assert config.output.csv_path == tmp_path / "records.csv"
    assert config.output.summary_path == tmp_path / "summary.json"
    assert config.output.demand_db_path == tmp_path / "db.txt"
    assert ScenarioConfig().output.demand_db_path is None
