"""Ground-station description and the per-site link it induces."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .atmosphere import CLOUD_PRESETS, AttenuationBreakdown, CloudType, total_attenuation
from .errors import DomainError
from .fading import EwParams
from .geometry import PathGeometry
from .turbulence import (
    NOMINAL_CN2_GROUND,
    ScintillationResult,
    TurbulenceEnvironment,
    fit_ew_params,
    scintillation,
)


@dataclass(frozen=True)
class SiteConfig:
    """One ground station and the downlink it sees.

    ``aperture_m = 0`` means a point receiver; any positive diameter switches
    the scintillation model to the aperture-averaged one.
    """

    zenith_deg: float = 0.0
    h0_m: float = 0.0
    hE_km: float = 0.0
    wind_mps: float = 2.8
    cloud: CloudType = field(default_factory=lambda: CLOUD_PRESETS["ThinCirrus"])
    aperture_m: float = 0.0
    kappa: float = 1.0
    wavelength_nm: float = 1550.0
    satellite_altitude_m: float = 5e5
    cn2_ground: float = NOMINAL_CN2_GROUND

    def __post_init__(self) -> None:
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")
        if self.aperture_m < 0:
            raise DomainError(f"aperture diameter must be non-negative, got {self.aperture_m}")
        if self.wind_mps < 0:
            raise DomainError(f"wind speed must be non-negative, got {self.wind_mps}")

    @property
    def geometry(self) -> PathGeometry:
        return PathGeometry(self.satellite_altitude_m, self.h0_m, self.hE_km, self.zenith_deg)

    @property
    def turbulence(self) -> TurbulenceEnvironment:
        return TurbulenceEnvironment(
            self.wind_mps, self.geometry, self.wavelength_nm, self.cn2_ground
        )


@dataclass(frozen=True)
class LinkState:
    """Derived per-site quantities feeding the outage and capacity formulas.

    Attributes
    ----------
    site : SiteConfig
    attenuation : float
        Deterministic transmittance ``I_a`` in (0, 1].
    ew : EwParams
        Turbulence fading parameters.
    kappa : float
        Share of the network average SNR seen by this site.
    """

    site: SiteConfig | None
    attenuation: float
    ew: EwParams
    kappa: float = 1.0
    breakdown: AttenuationBreakdown | None = None
    scintillation: ScintillationResult | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.attenuation <= 1.0:
            raise DomainError(f"attenuation must lie in (0, 1], got {self.attenuation}")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")

    @property
    def gain(self) -> float:
        """``(eta * I_a)^2 * kappa``: the factor that turns ``gamma_bar`` into ``Omega``."""
        return (self.ew.eta * self.attenuation) ** 2 * self.kappa

    def omega(self, gamma_bar: float) -> float:
        """``Omega_j = (eta_j I_a_j)^2 kappa_j gamma_bar``."""
        return self.gain * gamma_bar

    @property
    def diversity_weight(self) -> float:
        """This site's contribution ``alpha * beta / 2`` to the diversity order."""
        return self.ew.alpha * self.ew.beta / 2.0


@lru_cache(maxsize=512)
def _resolve(site: SiteConfig) -> tuple[AttenuationBreakdown, ScintillationResult, EwParams]:
    breakdown = total_attenuation(site, site.geometry)
    scint = scintillation(site.turbulence, site.aperture_m)
    return breakdown, scint, fit_ew_params(scint.scintillation_index)


def link_from_site(site: SiteConfig) -> LinkState:
    """Run the attenuation and turbulence chain for ``site``."""
    breakdown, scint, ew = _resolve(site)
    if not (math.isfinite(breakdown.total) and breakdown.total > 0):
        raise DomainError(f"attenuation underflowed to {breakdown.total} for {site}")
    return LinkState(site, breakdown.total, ew, site.kappa, breakdown, scint)
