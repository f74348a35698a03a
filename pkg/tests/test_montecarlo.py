"""Seeded Monte Carlo oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from sitediversity.analysis import (
    capacity_bound_b1,
    capacity_bound_b2,
    db_to_linear,
    homogeneous_network,
    outage_probability_exact,
)
from sitediversity.errors import DomainError
from sitediversity.montecarlo import (
    BLOCK_SIZE,
    MIN_EVENTS,
    McConfig,
    block_generator,
    simulate_capacity,
    simulate_constellation,
    simulate_curve,
    simulate_outage,
)
from sitediversity.site import LinkState, SiteConfig, link_from_site
from sitediversity.turbulence import fit_ew_params

LINK = link_from_site(SiteConfig(zenith_deg=40.0))
GTH = float(db_to_linear(7.0))


def net(K=2, db=18.0, Z=1, gth=GTH):
    return homogeneous_network(LINK, K, float(db_to_linear(db)), gth, Z=Z)


def test_config_validation():
    with pytest.raises(DomainError):
        McConfig(net(), trials=0)
    with pytest.raises(DomainError):
        McConfig(net(), workers=0)
    with pytest.raises(DomainError):
        McConfig(net(), seed=-1)


def test_blocks_use_distinct_streams():
    a = block_generator(5, 0).random(4)
    b = block_generator(5, 1).random(4)
    c = block_generator(6, 0).random(4)
    assert not np.array_equal(a, b) and not np.array_equal(a, c)
    assert np.array_equal(a, block_generator(5, 0).random(4))


def test_identical_across_workers():
    trials = 3 * BLOCK_SIZE + 17
    grid = [float(db_to_linear(d)) for d in (14.0, 16.0, 18.0)]
    one = simulate_curve(McConfig(net(), trials, seed=11, workers=1), grid)
    three = simulate_curve(McConfig(net(), trials, seed=11, workers=3), grid)
    assert one.outage == three.outage
    assert one.capacity == three.capacity


def test_seed_changes_estimate():
    a = simulate_outage(McConfig(net(), 50_000, seed=1))
    b = simulate_outage(McConfig(net(), 50_000, seed=2))
    assert a.point_estimate != b.point_estimate


@pytest.mark.parametrize("K, db", [(1, 22.0), (2, 21.0), (5, 19.0)])
def test_outage_covers_exact(K, db):
    n = net(K, db)
    est = simulate_outage(McConfig(n, 400_000, seed=K))
    assert est.resolved
    assert est.standard_error == pytest.approx(
        math.sqrt(est.point_estimate * (1 - est.point_estimate) / est.trials_used)
    )
    assert est.covers(outage_probability_exact(n), 3.0)


def test_constellation_small_case():
    n = net(2, 18.0, Z=2)
    est = simulate_constellation(McConfig(n, 400_000, seed=9))
    assert est.covers(outage_probability_exact(n), 3.0)


def test_more_satellites_never_worse():
    ests = [simulate_constellation(McConfig(net(2, 17.0, Z=z), 200_000, seed=3)) for z in (1, 2)]
    exact = [outage_probability_exact(net(2, 17.0, Z=z)) for z in (1, 2)]
    assert exact[1] <= exact[0]
    assert ests[1].point_estimate <= ests[0].point_estimate + 3 * ests[0].standard_error


def test_simulate_outage_rejects_constellation():
    with pytest.raises(DomainError):
        simulate_outage(McConfig(net(Z=2), 10))


def test_threshold_extremes():
    low = simulate_outage(McConfig(net(gth=1e-30), 20_000))
    assert low.events == 0 and not low.resolved
    high = simulate_outage(McConfig(net(gth=1e30), 20_000))
    assert high.point_estimate == 1.0


def test_below_resolution_floor():
    est = simulate_outage(McConfig(net(2, 40.0), 20_000))
    assert est.events < MIN_EVENTS and est.point_estimate is None and est.standard_error is None
    with pytest.raises(ValueError):
        est.covers(0.0)


def test_capacity_zero_snr():
    assert simulate_capacity(McConfig(net(db=-math.inf), 1000)).point_estimate == 0.0


def test_capacity_nearly_deterministic_channel():
    link = LinkState(None, 0.3, fit_ew_params(1e-6))
    n = homogeneous_network(link, 1, 1000.0)
    est = simulate_capacity(McConfig(n, 50_000))
    assert est.point_estimate == pytest.approx(math.log2(1 + 1000.0 * 0.09), rel=1e-3)


@pytest.mark.parametrize("db", [10.0, 30.0, 50.0])
def test_capacity_between_bounds(db):
    n = net(5, db)
    est = simulate_capacity(McConfig(n, 200_000, seed=4))
    assert est.standard_error > 0
    assert capacity_bound_b1(n) <= est.point_estimate + 3 * est.standard_error
    assert est.point_estimate <= capacity_bound_b2(n) + 3 * est.standard_error


def test_elapsed_reported_but_not_compared():
    est = simulate_outage(McConfig(net(), 1000))
    assert est.elapsed >= 0.0
