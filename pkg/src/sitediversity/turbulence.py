"""Refractive-index turbulence along a downlink slant path.

Covers the altitude profile of ``C_n^2``, the Rytov variance, point and
aperture-averaged scintillation indices, the correlation width, and the
mapping from scintillation index to exponentiated-Weibull parameters.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import gamma as gamma_fn

from .errors import DomainError, NumericalError
from .fading import EwParams, ew_g
from .geometry import PathGeometry

NOMINAL_CN2_GROUND = 1.7e-14  # m^(-2/3)
QUAD_RTOL = 1e-9
QUAD_ATOL = 1e-30
# Offsets above the station where the profile changes character; used as
# quadrature breakpoints (surface layer, 1 km scale height, 10 km peak, tail).
_BREAKPOINTS_M = (100.0, 1_000.0, 3_000.0, 10_000.0, 20_000.0, 40_000.0, 80_000.0, 160_000.0)


def rms_wind_speed(v_g: float) -> float:
    """High-altitude r.m.s. wind speed (m/s) from ground wind speed ``v_g`` (m/s)."""
    if v_g < 0:
        raise DomainError(f"ground wind speed must be non-negative, got {v_g}")
    return math.sqrt(v_g**2 + 30.69 * v_g + 348.91)


def cn2_profile(h, v_r: float, c0: float = NOMINAL_CN2_GROUND):
    """Refractive-index structure parameter ``C_n^2(h)`` in m^(-2/3).

    ``h`` is the altitude in metres and may be an array.
    """
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise DomainError("altitude must be non-negative")
    out = (
        8.148e-56 * v_r**2 * h**10 * np.exp(-h / 1000.0)
        + 2.7e-16 * np.exp(-h / 1500.0)
        + c0 * np.exp(-h / 100.0)
    )
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class TurbulenceEnvironment:
    """Everything the turbulence integrals need for one station.

    ``profile`` overrides the built-in ``C_n^2`` altitude model when given.
    """

    ground_wind_mps: float
    geometry: PathGeometry
    wavelength_nm: float = 1550.0
    nominal_cn2_ground: float = NOMINAL_CN2_GROUND
    profile: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        if not self.wavelength_nm > 0:
            raise DomainError("wavelength must be positive")
        if self.ground_wind_mps < 0:
            raise DomainError("ground wind speed must be non-negative")

    @property
    def rms_wind_mps(self) -> float:
        return rms_wind_speed(self.ground_wind_mps)

    @property
    def wave_number_per_m(self) -> float:
        return 2.0 * math.pi / (self.wavelength_nm * 1e-9)

    def cn2(self, h: float) -> float:
        if self.profile is not None:
            return self.profile(h)
        return cn2_profile(h, self.rms_wind_mps, self.nominal_cn2_ground)


@dataclass(frozen=True)
class ScintillationResult:
    rytov_variance: float
    scintillation_index: float
    aperture_diameter_m: float
    correlation_width_m: float


def _altitude_integral(f: Callable[[float], float], h0: float, H: float, what: str) -> float:
    edges = [h0] + [h0 + b for b in _BREAKPOINTS_M if h0 + b < H] + [H]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(
                    f, a, b, epsrel=QUAD_RTOL, epsabs=QUAD_ATOL, limit=200
                )
            except integrate.IntegrationWarning as exc:
                raise NumericalError(
                    f"{what}: quadrature on [{a:g}, {b:g}] m did not converge ({exc})"
                ) from exc
        total += val
    return total


def rytov_variance(env: TurbulenceEnvironment) -> float:
    """Rytov variance of a downlink plane wave from altitude ``H`` to the station."""
    geom = env.geometry
    h0, H = geom.gs_height_above_ground_m, geom.satellite_altitude_m
    integral = _altitude_integral(
        lambda h: env.cn2(h) * (h - h0) ** (5.0 / 6.0), h0, H, "Rytov variance"
    )
    k = env.wave_number_per_m
    return 2.25 * k ** (7.0 / 6.0) * geom.sec_zenith ** (11.0 / 6.0) * integral


def scintillation_index_point(sigma_R2: float) -> float:
    """Point-aperture scintillation index valid from weak to strong turbulence."""
    if sigma_R2 < 0:
        raise DomainError(f"Rytov variance must be non-negative, got {sigma_R2}")
    s125 = sigma_R2 ** (6.0 / 5.0)  # sigma_R^(12/5)
    exponent = 0.49 * sigma_R2 / (1.0 + 1.11 * s125) ** (7.0 / 6.0) + 0.51 * sigma_R2 / (
        1.0 + 0.69 * s125
    ) ** (5.0 / 6.0)
    return math.expm1(exponent)


def scintillation_index_aperture(env: TurbulenceEnvironment, D_G: float) -> float:
    """Aperture-averaged scintillation index for a receiver of diameter ``D_G`` (m).

    Weak-fluctuation result; ``D_G = 0`` gives the point-aperture limit of the
    same approximation.
    """
    if D_G < 0:
        raise DomainError(f"aperture diameter must be non-negative, got {D_G}")
    geom = env.geometry
    h0, H = geom.gs_height_above_ground_m, geom.satellite_altitude_m
    k = env.wave_number_per_m
    fresnel = k * D_G**2 / (16.0 * geom.slant_path_m)
    offset = fresnel ** (5.0 / 6.0)
    span = H - h0

    def integrand(h: float) -> float:
        z = complex(fresnel, (h - h0) / span)
        return env.cn2(h) * ((z ** (5.0 / 6.0)).real - offset)

    integral = _altitude_integral(integrand, h0, H, "aperture scintillation")
    return 8.7 * k ** (7.0 / 6.0) * span ** (5.0 / 6.0) * geom.sec_zenith ** (11.0 / 6.0) * integral


def correlation_width(zeta: float, k: float) -> float:
    """Atmospheric correlation width (m) for zenith ``zeta`` (deg), wave number ``k`` (1/m)."""
    if not 0.0 <= zeta < 50.0:
        raise DomainError(f"correlation width is only defined for 0 <= zenith < 50 deg, got {zeta}")
    if not k > 0:
        raise DomainError("wave number must be positive")
    return math.sqrt(45e3 / math.cos(math.radians(zeta)) / k)


def scintillation(env: TurbulenceEnvironment, D_G: float = 0.0) -> ScintillationResult:
    """Scintillation summary for a station; ``D_G = 0`` selects the point aperture."""
    s_r2 = rytov_variance(env)
    if D_G == 0.0:
        s_i2 = scintillation_index_point(s_r2)
    else:
        s_i2 = scintillation_index_aperture(env, D_G)
    zeta = env.geometry.zenith_angle_deg
    rho_c = correlation_width(zeta, env.wave_number_per_m) if zeta < 50.0 else math.nan
    return ScintillationResult(s_r2, s_i2, D_G, rho_c)


def fit_ew_params(sigma_I2: float) -> EwParams:
    """Exponentiated-Weibull parameters reproducing scintillation index ``sigma_I2``.

    The scale is chosen so that the mean irradiance is one.
    """
    if not sigma_I2 > 0:
        raise DomainError(f"scintillation index must be positive, got {sigma_I2}")
    gamma_arg = 2.487 * sigma_I2 ** (1.0 / 6.0) - 0.104
    if gamma_arg <= 0:
        raise NumericalError(
            f"scintillation index {sigma_I2:.3e} is below the fit's range "
            f"(gamma argument {gamma_arg:.3e} at or past the pole at 0)"
        )
    alpha = 7.220 * sigma_I2 ** (1.0 / 3.0) / gamma_fn(gamma_arg)
    beta = 1.012 * (alpha * sigma_I2) ** (-13.0 / 25.0) + 0.142
    eta = 1.0 / (alpha * gamma_fn(1.0 + 1.0 / beta) * ew_g(1, alpha, beta))
    if not all(math.isfinite(v) and v > 0 for v in (alpha, beta, eta)):
        raise NumericalError(f"non-positive EW fit for sigma_I2={sigma_I2}: {alpha}, {beta}, {eta}")
    return EwParams(alpha, beta, eta, sigma_I2)
