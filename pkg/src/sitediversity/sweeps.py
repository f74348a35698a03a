"""Parameter sweeps behind the command-line tool.

Each sweep takes a resolved :class:`~sitediversity.config.RunConfig` and
returns a :class:`SweepResult`: an abscissa column followed by one or more
metric columns, written as CSV.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .analysis import (
    NetworkConfig,
    capacity_bound_b1,
    capacity_bound_b2,
    db_to_linear,
    diversity_order_constellation,
    outage_asymptotic,
    outage_probability_exact,
    outage_probability_series,
)
from .config import PRESETS, RunConfig
from .errors import ConfigError, DomainError, NumericalError
from .montecarlo import McConfig, simulate_curve
from .site import SiteConfig, link_from_site

TABLE3_ZENITHS = (0.0, 15.0, 30.0, 40.0)
TABLE3_CASES = (("case1", "ground-level"), ("case2", "high-ground-windy"))


@dataclass(frozen=True)
class SweepResult:
    """Ordered sweep output.

    Attributes
    ----------
    abscissa_name : str
    ordinate_names : tuple of str
        Metric column names.
    rows : tuple of tuple
        ``(x, y1, y2, ...)``; a metric is ``None`` where it is not available
        (for instance a series that failed to converge).
    metadata : dict
        Resolved configuration that produced the rows.
    """

    abscissa_name: str
    ordinate_names: tuple[str, ...]
    rows: tuple[tuple, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ordinate_names", tuple(self.ordinate_names))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        width = 1 + len(self.ordinate_names)
        for row in self.rows:
            if len(row) != width:
                raise DomainError(f"row {row} has {len(row)} cells, expected {width}")
            for v in row:
                if v is not None and not math.isfinite(v):
                    raise NumericalError(f"non-finite value in sweep row {row}")
        xs = [r[0] for r in self.rows]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError(f"sweep abscissa {self.abscissa_name} is not strictly increasing")

    @property
    def header(self) -> tuple[str, ...]:
        return (self.abscissa_name, *self.ordinate_names)

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_cell(v) for v in row])
        return buf.getvalue()


def format_cell(value) -> str:
    """Nine significant digits in scientific notation; integers verbatim; ``None`` empty."""
    if value is None:
        return ""
    if isinstance(value, (bool,)):
        raise TypeError("boolean cells are not supported")
    if isinstance(value, int):
        return str(value)
    return f"{float(value):.8e}"


def _network(cfg: RunConfig, sites: Sequence[SiteConfig], gamma_bar_db: float, Z: int | None = None) -> NetworkConfig:
    return NetworkConfig(
        tuple(link_from_site(s) for s in sites),
        gamma_th=float(db_to_linear(cfg.scenario.gamma_th_db)),
        gamma_bar=float(db_to_linear(gamma_bar_db)),
        constellation_size=cfg.scenario.constellation_size if Z is None else Z,
    )


def _require(cfg: RunConfig, name: str, command: str) -> tuple:
    values = getattr(cfg.sweep, name)
    if not values:
        raise ConfigError(f"{command} needs sweep.{name}")
    return values


def _single_gamma_bar(cfg: RunConfig, command: str, default: float | None = None) -> float:
    values = cfg.sweep.gamma_bar_db
    if not values:
        if default is None:
            raise ConfigError(f"{command} needs a single sweep.gamma_bar_db value")
        return default
    if len(values) != 1:
        raise ConfigError(f"{command} takes a single sweep.gamma_bar_db value, got {len(values)}")
    return values[0]


def _optional(fn: Callable[[], float]) -> float | None:
    try:
        return fn()
    except NumericalError:
        return None


def _probability(p: float) -> float | None:
    # the high-SNR approximation is left blank where it is not a probability
    return p if p <= 1.0 else None


def outage_sweep(cfg: RunConfig) -> SweepResult:
    """Exact, series and asymptotic outage versus average SNR (dB)."""
    grid = _require(cfg, "gamma_bar_db", "outage-sweep")
    base = _network(cfg, cfg.site_configs(), grid[0])
    rows = []
    for db in grid:
        net = base.with_gamma_bar(float(db_to_linear(db)))
        rows.append(
            (
                db,
                outage_probability_exact(net),
                _optional(lambda: outage_probability_series(net)),
                _probability(outage_asymptotic(net)),
            )
        )
    return SweepResult("gamma_bar_db", ("op_exact", "op_series", "op_asymptotic"), rows, cfg.to_dict())


def _capacity_row(net: NetworkConfig) -> tuple:
    b2 = capacity_bound_b2(net) if net.is_homogeneous else None
    return capacity_bound_b1(net), b2


def capacity_sweep(cfg: RunConfig) -> SweepResult:
    """Capacity bounds versus average SNR, or versus zenith angle when ``sweep.zenith_deg`` is set.

    The second bound is left empty for networks with unequal stations.
    """
    names = ("capacity_b1", "capacity_b2")
    if cfg.sweep.zenith_deg:
        db = _single_gamma_bar(cfg, "capacity-sweep over zenith angle")
        rows = []
        for zeta in cfg.sweep.zenith_deg:
            net = _network(cfg, cfg.site_configs(zenith_deg=zeta), db)
            rows.append((zeta, *_capacity_row(net)))
        return SweepResult("zenith_deg", names, rows, cfg.to_dict())
    grid = _require(cfg, "gamma_bar_db", "capacity-sweep")
    base = _network(cfg, cfg.site_configs(), grid[0])
    rows = [(db, *_capacity_row(base.with_gamma_bar(float(db_to_linear(db))))) for db in grid]
    return SweepResult("gamma_bar_db", names, rows, cfg.to_dict())


def _stations(cfg: RunConfig, K: int) -> list[SiteConfig]:
    # K stations drawn cyclically from the configured list
    template = cfg.site_configs()
    return [template[i % len(template)] for i in range(K)]


def diversity_sweep(cfg: RunConfig) -> SweepResult:
    """Diversity order versus number of stations (one column per constellation size),
    or versus constellation size when only ``sweep.z_values`` is given."""
    zs = cfg.sweep.z_values or (cfg.scenario.constellation_size,)
    if cfg.sweep.k_values:
        rows = []
        for K in cfg.sweep.k_values:
            net = _network(cfg, _stations(cfg, K), 0.0, Z=1)
            rows.append((K, *(diversity_order_constellation(net.with_constellation(Z)) for Z in zs)))
        return SweepResult("k", tuple(f"diversity_order_z{Z}" for Z in zs), rows, cfg.to_dict())
    if not cfg.sweep.z_values:
        raise ConfigError("diversity needs sweep.k_values or sweep.z_values")
    net = _network(cfg, cfg.site_configs(), 0.0, Z=1)
    rows = [(Z, diversity_order_constellation(net.with_constellation(Z))) for Z in zs]
    return SweepResult("z", (f"diversity_order_k{net.K}",), rows, cfg.to_dict())


def aperture_sweep(cfg: RunConfig) -> SweepResult:
    """Scintillation, fitted fading parameters and outage versus receiver aperture.

    Fading columns describe the first site group; outage columns (one per
    ``sweep.gamma_bar_db`` value) cover the whole network.
    """
    apertures = _require(cfg, "aperture_m", "aperture")
    grid = _require(cfg, "gamma_bar_db", "aperture")
    names = ("scintillation_index", "alpha", "beta", "eta", *(f"op_exact_{db:g}db" for db in grid))
    rows = []
    for d in apertures:
        sites = cfg.site_configs(aperture_m=d)
        first = link_from_site(sites[0])
        net = _network(cfg, sites, grid[0])
        ops = [outage_probability_exact(net.with_gamma_bar(float(db_to_linear(db)))) for db in grid]
        rows.append(
            (d, first.scintillation.scintillation_index, first.ew.alpha, first.ew.beta, first.ew.eta, *ops)
        )
    return SweepResult("aperture_m", names, rows, cfg.to_dict())


def mc_verify(cfg: RunConfig) -> SweepResult:
    """Closed-form outage and capacity next to Monte Carlo estimates with standard errors.

    ``op_mc`` is empty where fewer than the minimum number of outage events
    were observed; ``op_mc_events`` is always reported.
    """
    grid = _require(cfg, "gamma_bar_db", "mc-verify")
    base = _network(cfg, cfg.site_configs(), grid[0])
    mc = McConfig(base, trials=cfg.mc.trials, seed=cfg.mc.seed, workers=cfg.mc.workers)
    curve = simulate_curve(mc, [float(db_to_linear(db)) for db in grid])
    rows = []
    for db, op, cap in zip(grid, curve.outage, curve.capacity):
        net = base.with_gamma_bar(float(db_to_linear(db)))
        b1, b2 = _capacity_row(net)
        rows.append(
            (
                db,
                outage_probability_exact(net),
                op.point_estimate,
                op.standard_error,
                op.events,
                b1,
                cap.point_estimate,
                cap.standard_error,
                b2,
            )
        )
    names = (
        "op_exact",
        "op_mc",
        "op_mc_se",
        "op_mc_events",
        "capacity_b1",
        "capacity_mc",
        "capacity_mc_se",
        "capacity_b2",
    )
    return SweepResult("gamma_bar_db", names, rows, cfg.to_dict())


def table3(cfg: RunConfig) -> SweepResult:
    """Outage of both deployment cases at the tabulated zenith angles.

    Station heights and wind follow each case's preset; site count, cloud,
    aperture and SNR split come from the configured site groups.
    """
    db = _single_gamma_bar(cfg, "table3", default=24.0)
    rows = []
    for zeta in TABLE3_ZENITHS:
        row = [zeta]
        for _, preset in TABLE3_CASES:
            sites = cfg.site_configs(zenith_deg=zeta, **PRESETS[preset])
            row.append(outage_probability_exact(_network(cfg, sites, db)))
        rows.append(tuple(row))
    names = tuple(f"op_{case}" for case, _ in TABLE3_CASES)
    return SweepResult("zenith_deg", names, rows, cfg.to_dict())


COMMANDS: dict[str, Callable[[RunConfig], SweepResult]] = {
    "outage-sweep": outage_sweep,
    "capacity-sweep": capacity_sweep,
    "diversity": diversity_sweep,
    "aperture": aperture_sweep,
    "mc-verify": mc_verify,
    "table3": table3,
}
