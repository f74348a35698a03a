"""Seeded Monte Carlo estimates of selection outage and ergodic capacity.

Trials are cut into fixed-size blocks. Block ``b`` draws from a Philox
counter-based generator keyed on ``(seed, b)``, and its draws are laid out as
``(trial, satellite, station)``. Block results are reduced in block order, so
the estimates depend only on ``(seed, trials, network)`` and not on how many
worker processes ran the blocks.

One set of fading draws serves any number of average-SNR points: outage at
``gamma_bar`` happens when ``gamma_bar * max_link_gain <= gamma_th``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analysis import NetworkConfig
from .errors import DomainError

BLOCK_SIZE = 1 << 15
MIN_EVENTS = 20
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class McConfig:
    """Simulation request."""

    net: NetworkConfig
    trials: int = 1_000_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if not (isinstance(self.trials, (int, np.integer)) and self.trials >= 1):
            raise DomainError(f"trials must be a positive integer, got {self.trials}")
        if not (isinstance(self.workers, (int, np.integer)) and self.workers >= 1):
            raise DomainError(f"workers must be a positive integer, got {self.workers}")
        if not 0 <= self.seed <= _SEED_MASK:
            raise DomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class McEstimate:
    """Point estimate with its standard error.

    For outage, ``point_estimate`` and ``standard_error`` are ``None`` when
    fewer than ``MIN_EVENTS`` outages were observed (below resolution).
    """

    point_estimate: float | None
    standard_error: float | None
    trials_used: int
    elapsed: float = field(compare=False)
    events: int | None = None

    @property
    def resolved(self) -> bool:
        return self.point_estimate is not None

    def covers(self, value: float, n_se: float = 3.0) -> bool:
        if not self.resolved:
            raise ValueError("estimate is below resolution")
        return abs(self.point_estimate - value) <= n_se * self.standard_error


@dataclass(frozen=True)
class McCurve:
    """Outage and capacity estimates at several average SNRs from one set of draws."""

    gamma_bars: np.ndarray
    outage: tuple[McEstimate, ...]
    capacity: tuple[McEstimate, ...]


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Independent stream for trial block ``block`` under master ``seed``."""
    return np.random.Generator(np.random.Philox(key=(seed & _SEED_MASK) | (block << 64)))


def _link_arrays(net: NetworkConfig):
    alphas = np.array([s.ew.alpha for s in net.sites])
    betas = np.array([s.ew.beta for s in net.sites])
    etas = np.array([s.ew.eta for s in net.sites])
    # gamma_j = gamma_bar * kappa_j * (I_a_j * I_t_j)^2
    scale = np.array([s.kappa * s.attenuation**2 for s in net.sites])
    return alphas, betas, etas, scale


def _run_block(task):
    seed, block, n, Z, alphas, betas, etas, scale, gamma_bars, gamma_th = task
    rng = block_generator(seed, block)
    u = rng.random((n, Z, alphas.size))
    irradiance = etas * (-np.log1p(-(u ** (1.0 / alphas)))) ** (1.0 / betas)
    best = np.max(scale * irradiance**2, axis=(1, 2))
    counts = np.empty(gamma_bars.size, dtype=np.int64)
    sums = np.empty(gamma_bars.size)
    sumsq = np.empty(gamma_bars.size)
    for i, g in enumerate(gamma_bars):
        snr = g * best
        counts[i] = np.count_nonzero(snr <= gamma_th)
        c = np.log2(1.0 + snr)
        sums[i] = c.sum()
        sumsq[i] = np.dot(c, c)
    return counts, sums, sumsq


def _tasks(cfg: McConfig, gamma_bars: np.ndarray):
    alphas, betas, etas, scale = _link_arrays(cfg.net)
    n_blocks = -(-cfg.trials // BLOCK_SIZE)
    for b in range(n_blocks):
        n = min(BLOCK_SIZE, cfg.trials - b * BLOCK_SIZE)
        yield (cfg.seed, b, n, cfg.net.Z, alphas, betas, etas, scale, gamma_bars, cfg.net.gamma_th)


def _run(cfg: McConfig, gamma_bars: np.ndarray):
    tasks = list(_tasks(cfg, gamma_bars))
    if cfg.workers == 1 or len(tasks) == 1:
        results = [_run_block(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_block, tasks))
    counts = np.sum([r[0] for r in results], axis=0)
    sums = [math.fsum(r[1][i] for r in results) for i in range(gamma_bars.size)]
    sumsq = [math.fsum(r[2][i] for r in results) for i in range(gamma_bars.size)]
    return counts, sums, sumsq


def _outage_estimate(events: int, n: int, elapsed: float) -> McEstimate:
    if events < MIN_EVENTS:
        return McEstimate(None, None, n, elapsed, int(events))
    p = events / n
    return McEstimate(p, math.sqrt(p * (1.0 - p) / n), n, elapsed, int(events))


def _mean_estimate(total: float, total_sq: float, n: int, elapsed: float) -> McEstimate:
    mean = total / n
    if n > 1:
        var = max(total_sq - n * mean * mean, 0.0) / (n - 1)
        se = math.sqrt(var / n)
    else:
        se = math.inf
    return McEstimate(mean, se, n, elapsed)


def simulate_curve(cfg: McConfig, gamma_bars: Sequence[float]) -> McCurve:
    """Outage and capacity of the best of all ``Z*K`` links at each ``gamma_bar``."""
    grid = np.asarray(gamma_bars, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid < 0):
        raise DomainError("gamma_bars must be a non-empty 1-D sequence of non-negative values")
    start = time.perf_counter()
    counts, sums, sumsq = _run(cfg, grid)
    elapsed = time.perf_counter() - start
    n = cfg.trials
    outage = tuple(_outage_estimate(int(c), n, elapsed) for c in counts)
    capacity = tuple(_mean_estimate(s, q, n, elapsed) for s, q in zip(sums, sumsq))
    return McCurve(grid, outage, capacity)


def simulate_constellation(cfg: McConfig) -> McEstimate:
    """Outage when the best satellite/station pair out of ``Z*K`` is scheduled."""
    return simulate_curve(cfg, [cfg.net.gamma_bar]).outage[0]


def simulate_outage(cfg: McConfig) -> McEstimate:
    """Outage of best-station selection under a single satellite."""
    if cfg.net.Z != 1:
        raise DomainError("simulate_outage models one satellite; use simulate_constellation for Z > 1")
    return simulate_constellation(cfg)


def simulate_capacity(cfg: McConfig) -> McEstimate:
    """Ergodic capacity ``E[log2(1 + max_j gamma_j)]`` in bits per channel use."""
    return simulate_curve(cfg, [cfg.net.gamma_bar]).capacity[0]
