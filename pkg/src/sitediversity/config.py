"""Scenario files: loading, validation with line numbers, and resolved echo.

A scenario is a YAML document with four sections::

    scenario:            # shared link parameters; presets fill station heights/wind
      preset: ground-level
      gamma_th_db: 7
    sites:               # groups of identical stations
      - count: 20
        zenith_deg: 40
        cloud: thin-cirrus
    sweep:
      gamma_bar_db: {start: 0, stop: 80, step: 2}
    mc:
      trials: 1000000
      seed: 1

:func:`RunConfig.to_dict` produces the fully resolved form (presets expanded,
ranges listed) which loads back to the same configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

import yaml

from .atmosphere import CLOUD_PRESETS, CloudType, cloud_preset
from .errors import ConfigError, DomainError
from .site import SiteConfig
from .turbulence import NOMINAL_CN2_GROUND

PRESETS: dict[str, dict[str, float]] = {
    "ground-level": {"h0_m": 0.0, "hE_km": 0.0, "wind_mps": 2.8},
    "high-ground-windy": {"h0_m": 1000.0, "hE_km": 1.2, "wind_mps": 11.176},
}
SCENARIO_DEFAULTS: dict[str, Any] = {
    "wavelength_nm": 1550.0,
    "satellite_altitude_m": 5e5,
    "gamma_th_db": 7.0,
    "cn2_ground": NOMINAL_CN2_GROUND,
    "constellation_size": 1,
}
_SECTIONS = ("scenario", "sites", "sweep", "mc")
_SCENARIO_KEYS = {"preset", "h0_m", "hE_km", "wind_mps", *SCENARIO_DEFAULTS}
_SITE_KEYS = {"count", "zenith_deg", "cloud", "aperture_m", "kappa", "h0_m", "hE_km", "wind_mps"}
_SWEEP_KEYS = {"gamma_bar_db", "k_values", "z_values", "aperture_m", "zenith_deg"}
_MC_KEYS = {"trials", "seed", "workers"}
_MAX_SWEEP_POINTS = 100_000


class _Doc:
    """Plain data decoded from YAML plus the source line of every node."""

    def __init__(self, text: str, path: str | None):
        self.path = path
        self.lines: dict[tuple, int] = {}
        self._scalars = yaml.SafeLoader("")
        try:
            root = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ConfigError(f"malformed YAML: {getattr(exc, 'problem', exc)}", line, path) from exc
        self.data = {} if root is None else self._convert(root, ())

    def _convert(self, node, where: tuple):
        self.lines[where] = node.start_mark.line + 1
        if isinstance(node, yaml.MappingNode):
            out = {}
            for key_node, value_node in node.value:
                key = key_node.value
                if key in out:
                    raise ConfigError(f"duplicate key {key!r}", key_node.start_mark.line + 1, self.path)
                out[key] = self._convert(value_node, where + (key,))
                self.lines[where + (key,)] = key_node.start_mark.line + 1
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, where + (i,)) for i, v in enumerate(node.value)]
        return self._scalars.construct_object(node, deep=True)

    def line(self, where: tuple) -> int | None:
        while where and where not in self.lines:
            where = where[:-1]
        return self.lines.get(where)

    def error(self, where: tuple, message: str) -> ConfigError:
        label = ".".join(str(p) for p in where)
        prefix = f"{label}: " if label else ""
        return ConfigError(prefix + message, self.line(where), self.path)


@dataclass(frozen=True)
class SiteGroup:
    count: int
    zenith_deg: float
    cloud: CloudType
    aperture_m: float = 0.0
    kappa: float = 1.0
    h0_m: float = 0.0
    hE_km: float = 0.0
    wind_mps: float = 2.8


@dataclass(frozen=True)
class Scenario:
    preset: str = "ground-level"
    wavelength_nm: float = 1550.0
    satellite_altitude_m: float = 5e5
    gamma_th_db: float = 7.0
    cn2_ground: float = NOMINAL_CN2_GROUND
    constellation_size: int = 1
    h0_m: float = 0.0
    hE_km: float = 0.0
    wind_mps: float = 2.8


@dataclass(frozen=True)
class SweepSpec:
    gamma_bar_db: tuple[float, ...] = ()
    k_values: tuple[int, ...] = ()
    z_values: tuple[int, ...] = ()
    aperture_m: tuple[float, ...] = ()
    zenith_deg: tuple[float, ...] = ()


@dataclass(frozen=True)
class McSpec:
    trials: int = 1_000_000
    seed: int = 1
    workers: int = 1


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario = field(default_factory=Scenario)
    sites: tuple[SiteGroup, ...] = ()
    sweep: SweepSpec = field(default_factory=SweepSpec)
    mc: McSpec = field(default_factory=McSpec)

    def site_configs(self, **overrides) -> list[SiteConfig]:
        """Expanded station list, one entry per station; ``overrides`` apply to all."""
        out = []
        for group in self.sites:
            site = self.site_config(group, **overrides)
            out.extend([site] * group.count)
        return out

    def site_config(self, group: SiteGroup, **overrides) -> SiteConfig:
        sc = self.scenario
        site = SiteConfig(
            zenith_deg=group.zenith_deg,
            h0_m=group.h0_m,
            hE_km=group.hE_km,
            wind_mps=group.wind_mps,
            cloud=group.cloud,
            aperture_m=group.aperture_m,
            kappa=group.kappa,
            wavelength_nm=sc.wavelength_nm,
            satellite_altitude_m=sc.satellite_altitude_m,
            cn2_ground=sc.cn2_ground,
        )
        return replace(site, **overrides) if overrides else site

    def with_mc(self, **changes) -> RunConfig:
        return replace(self, mc=replace(self.mc, **{k: v for k, v in changes.items() if v is not None}))

    def to_dict(self) -> dict:
        """Fully resolved, round-trippable description."""
        sc = self.scenario
        sites = []
        for g in self.sites:
            if g.cloud.name in CLOUD_PRESETS and CLOUD_PRESETS[g.cloud.name] == g.cloud:
                cloud: Any = g.cloud.name
            else:
                cloud = {
                    "n_per_cm3": g.cloud.number_concentration_per_cm3,
                    "lw_g_per_m3": g.cloud.liquid_water_g_per_m3,
                }
            sites.append(
                {
                    "count": g.count,
                    "zenith_deg": g.zenith_deg,
                    "cloud": cloud,
                    "aperture_m": g.aperture_m,
                    "kappa": g.kappa,
                    "h0_m": g.h0_m,
                    "hE_km": g.hE_km,
                    "wind_mps": g.wind_mps,
                }
            )
        sweep = {k: list(v) for k, v in vars(self.sweep).items() if v}
        return {
            "scenario": {
                "preset": sc.preset,
                "wavelength_nm": sc.wavelength_nm,
                "satellite_altitude_m": sc.satellite_altitude_m,
                "gamma_th_db": sc.gamma_th_db,
                "cn2_ground": sc.cn2_ground,
                "constellation_size": sc.constellation_size,
                "h0_m": sc.h0_m,
                "hE_km": sc.hE_km,
                "wind_mps": sc.wind_mps,
            },
            "sites": sites,
            "sweep": sweep,
            "mc": {"trials": self.mc.trials, "seed": self.mc.seed, "workers": self.mc.workers},
        }

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, default_flow_style=None, width=100)


def _number(doc: _Doc, where: tuple, value, *, integer: bool = False, low=None, high=None,
            low_open: bool = False) -> float | int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise doc.error(where, f"expected a number, got {value!r}")
    if integer:
        if isinstance(value, float):
            if not value.is_integer():
                raise doc.error(where, f"expected an integer, got {value!r}")
            value = int(value)
    else:
        value = float(value)
    if not math.isfinite(value):
        raise doc.error(where, f"expected a finite number, got {value!r}")
    if low is not None and (value < low or (low_open and value == low)):
        op = ">" if low_open else ">="
        raise doc.error(where, f"must be {op} {low}, got {value}")
    if high is not None and value > high:
        raise doc.error(where, f"must be <= {high}, got {value}")
    return value


def _mapping(doc: _Doc, where: tuple, value, allowed: set[str]) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise doc.error(where, "expected a mapping")
    for key in value:
        if key not in allowed:
            known = ", ".join(sorted(allowed))
            raise doc.error(where + (key,), f"unknown key {key!r} (expected one of: {known})")
    return value


def _series(doc: _Doc, where: tuple, value, *, integer: bool = False, low=None, low_open=False,
            high=None) -> tuple:
    if isinstance(value, dict):
        spec = _mapping(doc, where, value, {"start", "stop", "step"})
        for key in ("start", "stop", "step"):
            if key not in spec:
                raise doc.error(where, f"range needs start, stop and step (missing {key!r})")
        start = _number(doc, where + ("start",), spec["start"], integer=integer)
        stop = _number(doc, where + ("stop",), spec["stop"], integer=integer)
        step = _number(doc, where + ("step",), spec["step"], integer=integer, low=0, low_open=True)
        if stop < start:
            raise doc.error(where, "range stop must not be below start")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n > _MAX_SWEEP_POINTS:
            raise doc.error(where, f"range has {n} points (limit {_MAX_SWEEP_POINTS})")
        values = [start + i * step for i in range(n)]
    elif isinstance(value, list):
        values = value
    else:
        values = [value]
    if not values:
        raise doc.error(where, "expected at least one value")
    out = tuple(
        _number(doc, where + (i,), v, integer=integer, low=low, low_open=low_open, high=high)
        for i, v in enumerate(values)
    )
    if any(b <= a for a, b in zip(out, out[1:])):
        raise doc.error(where, "values must be strictly increasing")
    return out


def _cloud(doc: _Doc, where: tuple, value) -> CloudType:
    if isinstance(value, str):
        try:
            return cloud_preset(value)
        except DomainError as exc:
            raise doc.error(where, str(exc)) from None
    spec = _mapping(doc, where, value, {"n_per_cm3", "lw_g_per_m3"})
    if set(spec) != {"n_per_cm3", "lw_g_per_m3"}:
        raise doc.error(where, "custom cloud needs n_per_cm3 and lw_g_per_m3")
    n = _number(doc, where + ("n_per_cm3",), spec["n_per_cm3"], low=0, low_open=True)
    lw = _number(doc, where + ("lw_g_per_m3",), spec["lw_g_per_m3"], low=0, low_open=True)
    return CloudType("Custom", n, lw)


def _scenario(doc: _Doc, raw) -> Scenario:
    where = ("scenario",)
    spec = _mapping(doc, where, raw, _SCENARIO_KEYS)
    preset = spec.get("preset", "ground-level")
    if not isinstance(preset, str):
        raise doc.error(where + ("preset",), "preset must be a name")
    preset = preset.strip().lower().replace("_", "-").replace(" ", "-")
    if preset not in (*PRESETS, "custom"):
        raise doc.error(
            where + ("preset",), f"unknown preset {spec['preset']!r} (ground-level, high-ground-windy, custom)"
        )
    station = dict(PRESETS.get(preset, {}))
    for key in ("h0_m", "hE_km", "wind_mps"):
        if key in spec:
            station[key] = _number(doc, where + (key,), spec[key], low=0)
        elif preset == "custom":
            raise doc.error(where, f"custom preset needs {key}")
    values = dict(SCENARIO_DEFAULTS)
    for key in SCENARIO_DEFAULTS:
        if key in spec:
            values[key] = spec[key]
    return Scenario(
        preset=preset,
        wavelength_nm=_number(doc, where + ("wavelength_nm",), values["wavelength_nm"], low=800, high=2000),
        satellite_altitude_m=_number(
            doc, where + ("satellite_altitude_m",), values["satellite_altitude_m"], low=0, low_open=True
        ),
        gamma_th_db=_number(doc, where + ("gamma_th_db",), values["gamma_th_db"]),
        cn2_ground=_number(doc, where + ("cn2_ground",), values["cn2_ground"], low=0),
        constellation_size=_number(
            doc, where + ("constellation_size",), values["constellation_size"], integer=True, low=1
        ),
        **station,
    )


def _sites(doc: _Doc, raw, scenario: Scenario) -> tuple[SiteGroup, ...]:
    where = ("sites",)
    if raw is None:
        raise doc.error(where, "at least one site group is required")
    if not isinstance(raw, list):
        raise doc.error(where, "expected a list of site groups")
    if not raw:
        raise doc.error(where, "site list is empty; at least one ground station is required")
    groups = []
    for i, item in enumerate(raw):
        here = where + (i,)
        spec = _mapping(doc, here, item, _SITE_KEYS)
        zenith = _number(doc, here + ("zenith_deg",), spec.get("zenith_deg", 0.0), low=0)
        if zenith >= 90.0:
            raise doc.error(here + ("zenith_deg",), f"zenith angle must be below 90 degrees, got {zenith}")
        h0 = _number(doc, here + ("h0_m",), spec.get("h0_m", scenario.h0_m), low=0)
        if h0 >= scenario.satellite_altitude_m:
            raise doc.error(here + ("h0_m",), "station must be below the satellite")
        groups.append(
            SiteGroup(
                count=_number(doc, here + ("count",), spec.get("count", 1), integer=True, low=1),
                zenith_deg=zenith,
                cloud=_cloud(doc, here + ("cloud",), spec.get("cloud", "ThinCirrus")),
                aperture_m=_number(doc, here + ("aperture_m",), spec.get("aperture_m", 0.0), low=0),
                kappa=_number(doc, here + ("kappa",), spec.get("kappa", 1.0), low=0, low_open=True),
                h0_m=h0,
                hE_km=_number(doc, here + ("hE_km",), spec.get("hE_km", scenario.hE_km), low=0, high=5),
                wind_mps=_number(doc, here + ("wind_mps",), spec.get("wind_mps", scenario.wind_mps), low=0),
            )
        )
    return tuple(groups)


def _sweep(doc: _Doc, raw) -> SweepSpec:
    where = ("sweep",)
    spec = _mapping(doc, where, raw, _SWEEP_KEYS)
    kw = {}
    if "gamma_bar_db" in spec:
        kw["gamma_bar_db"] = _series(doc, where + ("gamma_bar_db",), spec["gamma_bar_db"])
    if "k_values" in spec:
        kw["k_values"] = _series(doc, where + ("k_values",), spec["k_values"], integer=True, low=1)
    if "z_values" in spec:
        kw["z_values"] = _series(doc, where + ("z_values",), spec["z_values"], integer=True, low=1)
    if "aperture_m" in spec:
        kw["aperture_m"] = _series(doc, where + ("aperture_m",), spec["aperture_m"], low=0)
    if "zenith_deg" in spec:
        kw["zenith_deg"] = _series(doc, where + ("zenith_deg",), spec["zenith_deg"], low=0)
        if kw["zenith_deg"][-1] >= 90.0:
            raise doc.error(where + ("zenith_deg",), "zenith angles must be below 90 degrees")
    return SweepSpec(**kw)


def _mc(doc: _Doc, raw) -> McSpec:
    where = ("mc",)
    spec = _mapping(doc, where, raw, _MC_KEYS)
    base = McSpec()
    return McSpec(
        trials=_number(doc, where + ("trials",), spec.get("trials", base.trials), integer=True, low=1),
        seed=_number(doc, where + ("seed",), spec.get("seed", base.seed), integer=True, low=0, high=2**64 - 1),
        workers=_number(doc, where + ("workers",), spec.get("workers", base.workers), integer=True, low=1),
    )


def parse_config(text: str, path: str | None = None) -> RunConfig:
    """Validate scenario ``text``; errors carry the offending line."""
    doc = _Doc(text, path)
    data = doc.data
    if not isinstance(data, dict):
        raise doc.error((), "top level must be a mapping with scenario/sites/sweep/mc sections")
    _mapping(doc, (), data, set(_SECTIONS))
    scenario = _scenario(doc, data.get("scenario"))
    return RunConfig(
        scenario=scenario,
        sites=_sites(doc, data.get("sites"), scenario),
        sweep=_sweep(doc, data.get("sweep")),
        mc=_mc(doc, data.get("mc")),
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", None, path) from exc
    return parse_config(text, path)
