"""Deterministic atmospheric attenuation: Mie scattering and cloud scattering.

Unit conventions (fixed, the empirical fits mix them):

* Mie polynomials take the wavelength in micrometres and station height in km.
* The visibility law takes the wavelength in nanometres (normalised by 550 nm)
  and returns visibility in km; the Beer-Lambert path is in km.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DomainError
from .geometry import MAX_SITE_ALTITUDE_KM, PathGeometry

if TYPE_CHECKING:
    from .site import SiteConfig

MIE_BAND_UM = (0.8, 2.0)


@dataclass(frozen=True)
class CloudType:
    """Cloud microphysics: droplet number concentration and liquid water content.

    Attributes
    ----------
    name : str
    number_concentration_per_cm3 : float
        ``N`` in cm^-3.
    liquid_water_g_per_m3 : float
        ``L_W`` in g/m^3.
    """

    name: str
    number_concentration_per_cm3: float
    liquid_water_g_per_m3: float

    def __post_init__(self) -> None:
        if not (self.number_concentration_per_cm3 > 0 and self.liquid_water_g_per_m3 > 0):
            raise DomainError(
                f"cloud {self.name!r}: number concentration and liquid water content must be positive"
            )

    @property
    def visibility_km(self) -> float:
        return visibility(self.number_concentration_per_cm3, self.liquid_water_g_per_m3)


# (N [cm^-3], L_W [g/m^3], tabulated V [km]) at 1550 nm.
CLOUD_TABLE: dict[str, tuple[float, float, float]] = {
    "Cumulus": (250.0, 1.0, 0.0280),
    "Stratus": (250.0, 0.29, 0.0626),
    "Stratocumulus": (250.0, 0.15, 0.0959),
    "Altostratus": (400.0, 0.41, 0.0369),
    "Nimbostratus": (200.0, 0.65, 0.0429),
    "Cirrus": (0.025, 0.06405, 64.66),
    "ThinCirrus": (0.5, 3.128e-4, 290.69),
}

CLOUD_PRESETS: dict[str, CloudType] = {
    name: CloudType(name, n, lw) for name, (n, lw, _) in CLOUD_TABLE.items()
}


def _normalise_cloud_name(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


def cloud_preset(name: str) -> CloudType:
    """Look up a built-in cloud by name, ignoring case, spaces, dashes and underscores."""
    key = _normalise_cloud_name(name)
    for preset_name, cloud in CLOUD_PRESETS.items():
        if _normalise_cloud_name(preset_name) == key:
            return cloud
    known = ", ".join(CLOUD_PRESETS)
    raise DomainError(f"unknown cloud type {name!r}; known types: {known}")


@dataclass(frozen=True)
class MieCoefficients:
    """Wavelength-dependent cubic coefficients of the Mie extinction ratio."""

    a: float
    b: float
    c: float
    d: float
    wavelength_um: float


@dataclass(frozen=True)
class AttenuationBreakdown:
    """Every intermediate of the attenuation chain for one site."""

    extinction_ratio: float
    mie_transmittance: float
    visibility_km: float
    size_exponent: float
    attenuation_coeff_per_km: float
    geometric_transmittance: float
    total: float


def mie_coefficients(lambda_um: float) -> MieCoefficients:
    """Empirical extinction-ratio coefficients for a wavelength in micrometres."""
    lo, hi = MIE_BAND_UM
    if not lo <= lambda_um <= hi:
        raise DomainError(f"Mie model valid for {lo}-{hi} um, got {lambda_um} um")
    lam = lambda_um
    a = -0.000545 * lam**2 + 0.002 * lam - 0.0038
    b = 0.00628 * lam**2 - 0.0232 * lam + 0.0439
    c = -0.028 * lam**2 + 0.101 * lam - 0.18
    d = -0.228 * lam**3 + 0.922 * lam**2 - 1.26 * lam + 0.719
    return MieCoefficients(a, b, c, d, lam)


def extinction_ratio(h_E_km: float, coeffs: MieCoefficients) -> float:
    """Mie extinction ratio for a station ``h_E_km`` above mean sea level."""
    if not 0.0 <= h_E_km <= MAX_SITE_ALTITUDE_KM:
        raise DomainError(f"station height must lie in [0, {MAX_SITE_ALTITUDE_KM}] km, got {h_E_km}")
    h = h_E_km
    return ((coeffs.a * h + coeffs.b) * h + coeffs.c) * h + coeffs.d


def mie_transmittance(rho_prime: float, theta: float) -> float:
    """Transmittance ``exp(-rho'/sin(theta))`` for elevation ``theta`` in degrees."""
    if not 0.0 < theta <= 90.0:
        raise DomainError(f"elevation angle must lie in (0, 90] degrees, got {theta}")
    if rho_prime < 0:
        raise DomainError("extinction ratio must be non-negative")
    return math.exp(-rho_prime / math.sin(math.radians(theta)))


def visibility(N: float, L_W: float) -> float:
    """Visibility (km) from droplet concentration (cm^-3) and liquid water (g/m^3)."""
    if not (N > 0 and L_W > 0):
        raise DomainError("number concentration and liquid water content must be positive")
    return 1.002 / (L_W * N) ** 0.6473


def kim_exponent(V: float) -> float:
    """Particle-size exponent of Kim's model.

    Branch edges are lower-inclusive so that the function is total on ``V >= 0``.
    """
    if V < 0:
        raise DomainError(f"visibility must be non-negative, got {V}")
    if V >= 50.0:
        return 1.6
    if V >= 6.0:
        return 1.3
    if V >= 1.0:
        return 0.16 * V + 0.34
    if V >= 0.5:
        return V - 0.5
    return 0.0


def attenuation_coefficient(V: float, lambda_nm: float) -> float:
    """Cloud attenuation coefficient in 1/km."""
    if not V > 0:
        raise DomainError(f"visibility must be positive, got {V}")
    if not lambda_nm > 0:
        raise DomainError(f"wavelength must be positive, got {lambda_nm}")
    return (3.91 / V) * (lambda_nm / 550.0) ** (-kim_exponent(V))


def geometric_transmittance(theta_per_km: float, L_km: float) -> float:
    """Beer-Lambert transmittance over ``L_km`` with coefficient ``theta_per_km``."""
    if theta_per_km < 0 or L_km < 0:
        raise DomainError("attenuation coefficient and path length must be non-negative")
    return math.exp(-theta_per_km * L_km)


def total_attenuation(site: SiteConfig, geom: PathGeometry) -> AttenuationBreakdown:
    """Combined Mie and cloud attenuation along the full slant path of ``geom``."""
    coeffs = mie_coefficients(site.wavelength_nm / 1000.0)
    rho = extinction_ratio(geom.gs_height_above_sea_km, coeffs)
    # Negative extinction is possible at the top of the fitted height range; clamp.
    i_m = mie_transmittance(max(rho, 0.0), geom.elevation_angle_deg)
    cloud = site.cloud
    V = cloud.visibility_km
    psi = kim_exponent(V)
    theta = attenuation_coefficient(V, site.wavelength_nm)
    i_g = geometric_transmittance(theta, geom.slant_path_km)
    return AttenuationBreakdown(
        extinction_ratio=rho,
        mie_transmittance=i_m,
        visibility_km=V,
        size_exponent=psi,
        attenuation_coeff_per_km=theta,
        geometric_transmittance=i_g,
        total=i_g * i_m,
    )
