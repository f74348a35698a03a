# %% [markdown]
# # Outage with ground-station site diversity
#
# A LEO satellite at 500 km serves `K` ground stations and the receiver with
# the best instantaneous SNR is scheduled. This script walks the chain from
# weather and turbulence to outage probability for the ground-level
# deployment, then checks the high-SNR slope against the diversity order.

# %%
from __future__ import annotations

import numpy as np

from sitediversity import (
    SiteConfig,
    db_to_linear,
    diversity_order,
    homogeneous_network,
    link_from_site,
    outage_asymptotic,
    outage_probability_exact,
)

site = SiteConfig(zenith_deg=40.0)  # thin cirrus, ground level, point receiver
link = link_from_site(site)
print(f"transmittance I_a        = {link.attenuation:.4f}")
print(f"Rytov variance           = {link.scintillation.rytov_variance:.4f}")
print(f"scintillation index      = {link.scintillation.scintillation_index:.4f}")
print(f"EW (alpha, beta, eta)    = ({link.ew.alpha:.4f}, {link.ew.beta:.4f}, {link.ew.eta:.4f})")

# %% [markdown]
# ## Outage versus average SNR
#
# Each added station multiplies the outage by another CDF factor, so the
# curves steepen with `K`.

# %%
grid = np.arange(10.0, 41.0, 5.0)
print("dB   " + "  ".join(f"K={K:<9d}" for K in (1, 2, 5, 20)))
for db in grid:
    ops = [
        outage_probability_exact(homogeneous_network(link, K, float(db_to_linear(db))))
        for K in (1, 2, 5, 20)
    ]
    print(f"{db:4.0f} " + "  ".join(f"{p:.3e}" for p in ops))

# %% [markdown]
# ## High-SNR behaviour
#
# The log-log slope tends to `-sum(alpha*beta/2)`; the asymptotic expression
# lies on top of the exact curve once outage is small.

# %%
net = homogeneous_network(link, 5, 1.0)
for db in (40.0, 60.0, 80.0):
    n = net.with_gamma_bar(float(db_to_linear(db)))
    print(f"{db:.0f} dB exact {outage_probability_exact(n):.4e}  asymptotic {outage_asymptotic(n):.4e}")
print(f"diversity order for K=5: {diversity_order(net):.3f}")
