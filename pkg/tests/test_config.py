"""Scenario file parsing and validation."""

from __future__ import annotations

import textwrap

import pytest

from sitediversity.atmosphere import CLOUD_PRESETS
from sitediversity.config import PRESETS, RunConfig, load_config, parse_config
from sitediversity.errors import ConfigError


def parse(text: str) -> RunConfig:
    return parse_config(textwrap.dedent(text), "scenario.yaml")


BASIC = """\
scenario:
  preset: high-ground-windy
sites:
  - count: 3
    zenith_deg: 15
    cloud: thin cirrus
  - count: 1
    zenith_deg: 40
    cloud: {n_per_cm3: 0.1, lw_g_per_m3: 0.002}
    kappa: 0.5
sweep:
  gamma_bar_db: {start: 0, stop: 10, step: 2.5}
  k_values: [1, 2, 3]
mc:
  trials: 5000
  seed: 99
"""


def test_presets_match_parameter_table():
    assert PRESETS["ground-level"] == {"h0_m": 0.0, "hE_km": 0.0, "wind_mps": 2.8}
    assert PRESETS["high-ground-windy"] == {"h0_m": 1000.0, "hE_km": 1.2, "wind_mps": 11.176}
    sc = RunConfig().scenario
    assert (sc.wavelength_nm, sc.satellite_altitude_m, sc.gamma_th_db, sc.cn2_ground) == (1550.0, 5e5, 7.0, 1.7e-14)


def test_parse_basic():
    cfg = parse(BASIC)
    assert cfg.scenario.preset == "high-ground-windy"
    assert [g.count for g in cfg.sites] == [3, 1]
    assert cfg.sites[0].cloud is CLOUD_PRESETS["ThinCirrus"]
    assert cfg.sites[0].h0_m == 1000.0 and cfg.sites[0].wind_mps == 11.176
    assert cfg.sites[1].cloud.name == "Custom" and cfg.sites[1].kappa == 0.5
    assert cfg.sweep.gamma_bar_db == (0.0, 2.5, 5.0, 7.5, 10.0)
    assert cfg.sweep.k_values == (1, 2, 3)
    assert (cfg.mc.trials, cfg.mc.seed, cfg.mc.workers) == (5000, 99, 1)
    sites = cfg.site_configs()
    assert len(sites) == 4 and sites[3].zenith_deg == 40.0


def test_resolved_echo_round_trips():
    cfg = parse(BASIC)
    again = parse_config(cfg.to_yaml())
    assert again == cfg
    assert again.to_yaml() == cfg.to_yaml()


def test_site_overrides_preset():
    cfg = parse(
        """
        scenario: {preset: ground-level}
        sites:
          - {count: 1, h0_m: 50, wind_mps: 5}
        """
    )
    assert cfg.sites[0].h0_m == 50.0 and cfg.sites[0].wind_mps == 5.0


def test_custom_preset_needs_station_fields():
    with pytest.raises(ConfigError, match="custom preset needs"):
        parse("scenario: {preset: custom, h0_m: 0}\nsites: [{count: 1}]\n")
    cfg = parse("scenario: {preset: custom, h0_m: 10, hE_km: 0.5, wind_mps: 3}\nsites: [{count: 1}]\n")
    assert cfg.sites[0].hE_km == 0.5


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("sites:\n  - count: 2\n    cloud: cumulonimbus\n", 3, "unknown cloud type"),
        ("sites:\n  - count: 2\n    zenith_deg: 95\n", 3, "below 90"),
        ("sites:\n  - count: 2\n    zenith_deg: -5\n", 3, ">= 0"),
        ("sites: []\n", 1, "empty"),
        ("scenario:\n  preset: ground-level\n", 1, "at least one site"),
        ("sites:\n  - count: 2\n    colour: red\n", 3, "unknown key 'colour'"),
        ("sites:\n  - count: 2.5\n", 2, "integer"),
        ("sites:\n  - count: yes\n", 2, "expected a number"),
        ("sites:\n  - {count: 2\n", 3, "malformed YAML"),
        ("sites: [{count: 1}]\nsweep:\n  gamma_bar_db: [5, 3]\n", 3, "strictly increasing"),
        ("sites: [{count: 1}]\nsweep:\n  gamma_bar_db: {start: 0, stop: 5}\n", 3, "step"),
        ("sites: [{count: 1}]\nsweep:\n  gamma_bar_db: {start: 0, stop: 5, step: 0}\n", 3, "> 0"),
        ("sites: [{count: 1}]\nscenario:\n  preset: seaside\n", 3, "unknown preset"),
        ("sites: [{count: 1}]\nscenario:\n  wavelength_nm: 500\n", 3, ">= 800"),
        ("sites: [{count: 1}]\nextra: 1\n", 2, "unknown key 'extra'"),
        ("sites: [{count: 1}]\nsites: [{count: 2}]\n", 2, "duplicate key"),
        ("- 1\n- 2\n", 1, "top level"),
        ("sites:\n  - count: 1\n    cloud: {n_per_cm3: 0.1}\n", 3, "lw_g_per_m3"),
        ("sites:\n  - count: 1\n    h0_m: 600000\n", 3, "below the satellite"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config(text, "scenario.yaml")
    assert fragment in str(info.value)
    assert info.value.line == line
    assert str(info.value).startswith(f"scenario.yaml:{line}:")


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "nope.yaml"))


def test_with_mc_overrides_only_given_fields():
    cfg = parse(BASIC).with_mc(seed=5, trials=None)
    assert cfg.mc.seed == 5 and cfg.mc.trials == 5000


def test_sweep_range_inclusive_endpoint():
    cfg = parse("sites: [{count: 1}]\nsweep:\n  gamma_bar_db: {start: 0, stop: 0.3, step: 0.1}\n")
    assert len(cfg.sweep.gamma_bar_db) == 4
