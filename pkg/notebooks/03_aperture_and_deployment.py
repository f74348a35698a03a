# %% [markdown]
# # Aperture averaging and deployment height
#
# A wider receiver averages out scintillation. Raising the stations shortens
# the turbulent part of the path. Both lower the outage, and larger zenith
# angles raise it.

# %%
from __future__ import annotations

from sitediversity import SiteConfig, db_to_linear, homogeneous_network, link_from_site, outage_probability_exact

for d in (0.01, 0.02, 0.05, 0.1, 0.2):
    link = link_from_site(SiteConfig(zenith_deg=40.0, aperture_m=d))
    op = outage_probability_exact(homogeneous_network(link, 20, float(db_to_linear(30.0))))
    print(f"D = {d:4.2f} m  sigma_I^2 = {link.scintillation.scintillation_index:.4f}  OP(30 dB, K=20) = {op:.3e}")

# %% [markdown]
# ## Two deployments at 24 dB
#
# Same computation as the `table3` command.

# %%
cases = {
    "ground level": dict(h0_m=0.0, hE_km=0.0, wind_mps=2.8),
    "high ground, windy": dict(h0_m=1000.0, hE_km=1.2, wind_mps=11.176),
}
for zeta in (0.0, 15.0, 30.0, 40.0):
    ops = [
        outage_probability_exact(
            homogeneous_network(link_from_site(SiteConfig(zenith_deg=zeta, **kw)), 20, float(db_to_linear(24.0)))
        )
        for kw in cases.values()
    ]
    print(f"zenith {zeta:4.0f}: " + "   ".join(f"{name} {p:.3e}" for name, p in zip(cases, ops)))
