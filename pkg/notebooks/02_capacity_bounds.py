# %% [markdown]
# # Ergodic capacity bounds
#
# The two closed-form bounds bracket the simulated capacity of best-station
# selection. B1 averages per-station capacity, B2 applies Jensen's
# inequality to the mean of the selected SNR.

# %%
from __future__ import annotations

from sitediversity import (
    McConfig,
    SiteConfig,
    capacity_bound_b1,
    capacity_bound_b2,
    db_to_linear,
    homogeneous_network,
    link_from_site,
    simulate_curve,
)

link = link_from_site(SiteConfig(zenith_deg=40.0, h0_m=1000.0, hE_km=1.2, wind_mps=11.176))
net = homogeneous_network(link, 5, 1.0)
grid = [10.0, 20.0, 30.0, 40.0, 50.0]
curve = simulate_curve(McConfig(net, trials=200_000, seed=11), [float(db_to_linear(d)) for d in grid])

# %%
print("dB    B1        MC (+/- SE)             B2")
for db, est in zip(grid, curve.capacity):
    n = net.with_gamma_bar(float(db_to_linear(db)))
    print(
        f"{db:4.0f}  {capacity_bound_b1(n):.4f}   {est.point_estimate:.4f} (+/- {est.standard_error:.1e})   "
        f"{capacity_bound_b2(n):.4f}"
    )
