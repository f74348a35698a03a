"""Site diversity for satellite-to-ground optical downlinks.

Physics chain: path geometry, cloud and scattering attenuation, turbulence
scintillation and its exponentiated-Weibull fit, then closed-form outage,
diversity and capacity for best-station selection, checked by seeded Monte
Carlo.
"""

from __future__ import annotations

from .analysis import (
    NetworkConfig,
    capacity_bound_b1,
    capacity_bound_b2,
    db_to_linear,
    diversity_order,
    diversity_order_constellation,
    expected_max_snr,
    homogeneous_network,
    linear_to_db,
    log_outage_asymptotic,
    log_outage_probability_exact,
    outage_asymptotic,
    outage_probability_exact,
    outage_probability_series,
    snr_for_outage,
    snr_for_outage_asymptotic,
)
from .atmosphere import (
    CLOUD_PRESETS,
    CloudType,
    attenuation_coefficient,
    cloud_preset,
    geometric_transmittance,
    total_attenuation,
    visibility,
)
from .errors import ConfigError, DomainError, NumericalError, UnsupportedConfigurationError
from .fading import EwParams, ew_cdf, ew_moment, ew_pdf, ew_quantile, ew_sample
from .geometry import PathGeometry, slant_path
from .montecarlo import McConfig, McEstimate, simulate_capacity, simulate_constellation, simulate_curve, simulate_outage
from .site import LinkState, SiteConfig, link_from_site
from .turbulence import TurbulenceEnvironment, fit_ew_params, rytov_variance, scintillation

__version__ = "0.1.0"

__all__ = [
    "CLOUD_PRESETS",
    "CloudType",
    "ConfigError",
    "DomainError",
    "EwParams",
    "LinkState",
    "McConfig",
    "McEstimate",
    "NetworkConfig",
    "NumericalError",
    "PathGeometry",
    "SiteConfig",
    "TurbulenceEnvironment",
    "UnsupportedConfigurationError",
    "attenuation_coefficient",
    "capacity_bound_b1",
    "capacity_bound_b2",
    "cloud_preset",
    "db_to_linear",
    "diversity_order",
    "diversity_order_constellation",
    "ew_cdf",
    "ew_moment",
    "ew_pdf",
    "ew_quantile",
    "ew_sample",
    "expected_max_snr",
    "fit_ew_params",
    "geometric_transmittance",
    "homogeneous_network",
    "linear_to_db",
    "link_from_site",
    "log_outage_asymptotic",
    "log_outage_probability_exact",
    "outage_asymptotic",
    "outage_probability_exact",
    "outage_probability_series",
    "rytov_variance",
    "scintillation",
    "simulate_capacity",
    "simulate_constellation",
    "simulate_curve",
    "simulate_outage",
    "slant_path",
    "snr_for_outage",
    "snr_for_outage_asymptotic",
    "total_attenuation",
    "visibility",
]
