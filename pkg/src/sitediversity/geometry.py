"""Satellite to ground-station path geometry.

A plane-parallel atmosphere is assumed, so the slant range scales with
``sec(zenith)``. Angles are accepted in degrees everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Mie extinction polynomial is only fitted for stations up to this height.
MAX_SITE_ALTITUDE_KM = 5.0


def _check_zenith(zeta: float, *, allow_horizon: bool = False) -> None:
    upper_ok = zeta <= 90.0 if allow_horizon else zeta < 90.0
    if not (0.0 <= zeta and upper_ok) or math.isnan(zeta):
        bound = "[0, 90]" if allow_horizon else "[0, 90)"
        raise DomainError(f"zenith angle must lie in {bound} degrees, got {zeta}")


def elevation_from_zenith(zeta: float) -> float:
    """Elevation angle (deg) for a zenith angle ``zeta`` (deg)."""
    _check_zenith(zeta, allow_horizon=True)
    return 90.0 - zeta


def slant_path(H: float, h0: float, zeta: float) -> float:
    """Slant path length in metres from a station at ``h0`` to a satellite at ``H``.

    Parameters
    ----------
    H : float
        Satellite altitude (m).
    h0 : float
        Station height above ground (m).
    zeta : float
        Zenith angle (deg), ``0 <= zeta < 90``.

    Returns
    -------
    float
        ``(H - h0) / cos(zeta)``.
    """
    _check_zenith(zeta)
    if not H > h0:
        raise DomainError(f"satellite altitude {H} m must exceed station height {h0} m")
    if zeta == 0.0:
        return H - h0
    return (H - h0) / math.cos(math.radians(zeta))


@dataclass(frozen=True)
class PathGeometry:
    """Resolved geometry for one satellite/station pair."""

    satellite_altitude_m: float
    gs_height_above_ground_m: float
    gs_height_above_sea_km: float
    zenith_angle_deg: float

    def __post_init__(self) -> None:
        _check_zenith(self.zenith_angle_deg)
        if self.gs_height_above_ground_m < 0:
            raise DomainError("station height above ground must be non-negative")
        if not 0.0 <= self.gs_height_above_sea_km <= MAX_SITE_ALTITUDE_KM:
            raise DomainError(
                f"station height above sea level must lie in [0, {MAX_SITE_ALTITUDE_KM}] km, "
                f"got {self.gs_height_above_sea_km}"
            )
        if not self.satellite_altitude_m > self.gs_height_above_ground_m:
            raise DomainError("satellite must be above the ground station")

    @property
    def elevation_angle_deg(self) -> float:
        return elevation_from_zenith(self.zenith_angle_deg)

    @property
    def slant_path_m(self) -> float:
        return slant_path(
            self.satellite_altitude_m, self.gs_height_above_ground_m, self.zenith_angle_deg
        )

    @property
    def slant_path_km(self) -> float:
        return self.slant_path_m / 1000.0

    @property
    def sec_zenith(self) -> float:
        return 1.0 / math.cos(math.radians(self.zenith_angle_deg))
