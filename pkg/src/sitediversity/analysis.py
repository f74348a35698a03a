"""Closed-form link metrics for best-station (and best-satellite) selection.

Every site ``j`` sees SNR ``gamma_j = kappa_j * gamma_bar * (I_a_j * I_t_j)^2``
with ``I_t_j`` exponentiated-Weibull. The per-site SNR distribution is then

    F_j(g) = (1 - exp[-(g / Omega_j)^(beta_j / 2)])^alpha_j,
    Omega_j = (eta_j * I_a_j)^2 * kappa_j * gamma_bar.

With ``Z`` satellites each station appears once per satellite, all links
independent. Log-domain variants are provided because networks with
thousands of links push outage probabilities far below the double range.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy import integrate, optimize
from scipy.special import gamma as gamma_fn

from .errors import DomainError, NumericalError, UnsupportedConfigurationError
from .fading import binom_terms
from .site import LinkState

LOG2E = 1.0 / math.log(2.0)
DEFAULT_GAMMA_TH_DB = 7.0
SERIES_MAX_TERMS = 100_000
_EPS = np.finfo(float).eps
_LOG_MAX = math.log(np.finfo(float).max)


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


@dataclass(frozen=True)
class NetworkConfig:
    """Stations competing for the downlink plus operating point.

    Attributes
    ----------
    sites : tuple of LinkState
        The ``K`` candidate ground stations.
    gamma_th : float
        Linear SNR threshold.
    gamma_bar : float
        Linear average SNR ``P_S / N_0``.
    constellation_size : int
        ``Z``; every satellite sees an independent copy of every station.
    """

    sites: tuple[LinkState, ...]
    gamma_th: float = float(db_to_linear(DEFAULT_GAMMA_TH_DB))
    gamma_bar: float = 1.0
    constellation_size: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "sites", tuple(self.sites))
        if not self.sites:
            raise DomainError("a network needs at least one ground station")
        if not (isinstance(self.constellation_size, (int, np.integer)) and self.constellation_size >= 1):
            raise DomainError(f"constellation size must be an integer >= 1, got {self.constellation_size}")
        if not self.gamma_th > 0:
            raise DomainError(f"SNR threshold must be positive, got {self.gamma_th}")
        if not self.gamma_bar >= 0:
            raise DomainError(f"average SNR must be non-negative, got {self.gamma_bar}")

    @property
    def K(self) -> int:
        return len(self.sites)

    @property
    def Z(self) -> int:
        return int(self.constellation_size)

    def with_gamma_bar(self, gamma_bar: float) -> NetworkConfig:
        return replace(self, gamma_bar=gamma_bar)

    def with_constellation(self, Z: int) -> NetworkConfig:
        return replace(self, constellation_size=Z)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([s.ew.alpha for s in self.sites])

    @property
    def betas(self) -> np.ndarray:
        return np.array([s.ew.beta for s in self.sites])

    @property
    def gains(self) -> np.ndarray:
        return np.array([s.gain for s in self.sites])

    @property
    def omegas(self) -> np.ndarray:
        return self.gains * self.gamma_bar

    @property
    def is_homogeneous(self) -> bool:
        first = self.sites[0]
        ref = (first.ew.alpha, first.ew.beta, first.gain)
        return all(
            np.allclose((s.ew.alpha, s.ew.beta, s.gain), ref, rtol=1e-12, atol=0.0)
            for s in self.sites[1:]
        )


def homogeneous_network(
    link: LinkState, K: int, gamma_bar: float, gamma_th: float | None = None, Z: int = 1
) -> NetworkConfig:
    """``K`` identical copies of ``link``."""
    if K < 1:
        raise DomainError("K must be at least 1")
    kwargs = {} if gamma_th is None else {"gamma_th": gamma_th}
    return NetworkConfig((link,) * K, gamma_bar=gamma_bar, constellation_size=Z, **kwargs)


def _reduced_thresholds(net: NetworkConfig) -> np.ndarray:
    # x_j = (gamma_th / Omega_j)^(beta_j / 2)
    with np.errstate(divide="ignore"):
        return (net.gamma_th / net.omegas) ** (net.betas / 2.0)


def log_outage_probability_exact(net: NetworkConfig) -> float:
    """Natural log of the exact outage probability."""
    x = _reduced_thresholds(net)
    with np.errstate(divide="ignore"):
        per_site = net.alphas * np.log(-np.expm1(-x))
    return float(net.Z * np.sum(per_site))


def outage_probability_exact(net: NetworkConfig) -> float:
    """Probability that the best of the ``Z*K`` links falls below ``gamma_th``.

    Product over stations (and satellites) of the per-link SNR CDF at the
    threshold.
    """
    return math.exp(log_outage_probability_exact(net))


def _site_series(alpha: float, x: float, tol: float) -> float:
    """``sum_rho binom(alpha, rho) (-1)^rho exp(-rho x)`` to relative accuracy ``tol``."""
    if x == 0.0:
        return 0.0
    q = math.exp(-x)
    if not math.isfinite(x) or q == 0.0:
        return 1.0
    chunk = 256
    total = 0.0
    abs_total = 0.0
    first = 1.0
    start = 0
    while start < SERIES_MAX_TERMS:
        rho = np.arange(start, start + chunk, dtype=float)
        signs = np.where(rho % 2 == 0, 1.0, -1.0)
        binoms = binom_terms(alpha, start, chunk, first)
        terms = signs * binoms * np.exp(-rho * x)
        partial = total + np.cumsum(terms)
        running_abs = abs_total + np.cumsum(np.abs(terms))
        # Past rho > alpha the terms keep one sign and shrink by less than q
        # per step, so the remainder is bounded by |term| q / (1 - q).
        tail = np.abs(terms) * q / (1.0 - q)
        done = (rho > alpha) & (tail <= tol * np.abs(partial))
        if np.any(done):
            i = int(np.argmax(done))
            value = float(partial[i])
            if _EPS * float(running_abs[i]) > tol * abs(value):
                raise NumericalError(
                    f"binomial outage series lost precision to cancellation "
                    f"(alpha={alpha:.4g}, x={x:.3e}); use the exact product form"
                )
            return value
        total = float(partial[-1])
        abs_total = float(running_abs[-1])
        nxt = start + chunk
        first = float(binoms[-1]) * (alpha - nxt + 1.0) / nxt
        start = nxt
    raise NumericalError(
        f"binomial outage series terms did not decay within {SERIES_MAX_TERMS} terms "
        f"(alpha={alpha:.4g}, x={x:.3e}); use the exact product form"
    )


def outage_probability_series(net: NetworkConfig, tol: float = 1e-10) -> float:
    """Outage probability from the binomial expansion of each station's CDF.

    Raises :class:`NumericalError` when the expansion cannot deliver relative
    accuracy ``tol`` (slow decay at high SNR or cancellation).
    """
    if not tol > 0:
        raise DomainError(f"series tolerance must be positive, got {tol}")
    x = _reduced_thresholds(net)
    # Relative errors add across the Z*K factors of the product.
    site_tol = tol / (net.Z * net.K)
    cache: dict[tuple[float, float], float] = {}
    log_total = 0.0
    for alpha, xj in zip(net.alphas, x):
        key = (float(alpha), float(xj))
        if key not in cache:
            cache[key] = _site_series(*key, site_tol)
        value = cache[key]
        if value <= 0.0:
            return 0.0
        log_total += math.log(value)
    return math.exp(net.Z * log_total)


def log_outage_asymptotic(net: NetworkConfig) -> float:
    """Natural log of the high-SNR outage approximation."""
    w = net.alphas * net.betas / 2.0
    return float(net.Z * np.sum(w * (math.log(net.gamma_th) - np.log(net.gains) - math.log(net.gamma_bar))))


def outage_asymptotic(net: NetworkConfig) -> float:
    """High-SNR outage approximation.

    ``prod_j (1 / (gain_j))^(alpha_j beta_j/2) * (gamma_th/gamma_bar)^G_d``,
    raised to the power ``Z`` for a constellation.
    """
    log_p = log_outage_asymptotic(net)
    # far below the high-SNR regime the approximation can exceed the double range
    return math.exp(log_p) if log_p < _LOG_MAX else math.inf


def diversity_order(net: NetworkConfig) -> float:
    """High-SNR outage slope for a single satellite: ``sum_j alpha_j beta_j / 2``."""
    return float(np.sum(net.alphas * net.betas) / 2.0)


def diversity_order_constellation(net: NetworkConfig) -> float:
    """Outage slope with opportunistic scheduling over ``Z`` satellites."""
    return net.Z * diversity_order(net)


def snr_for_outage_asymptotic(net: NetworkConfig, target: float) -> float:
    """Linear ``gamma_bar`` at which the asymptotic outage equals ``target``."""
    if not 0 < target < 1:
        raise DomainError("target outage must lie in (0, 1)")
    w = net.alphas * net.betas / 2.0
    offset = net.Z * np.sum(w * (math.log(net.gamma_th) - np.log(net.gains)))
    return math.exp((offset - math.log(target)) / (net.Z * np.sum(w)))


def snr_for_outage(net: NetworkConfig, target: float, lo_db: float = -40.0, hi_db: float = 120.0) -> float:
    """Linear ``gamma_bar`` at which the exact outage equals ``target`` (bisection in dB)."""
    if not 0 < target < 1:
        raise DomainError("target outage must lie in (0, 1)")
    log_target = math.log(target)

    def f(db: float) -> float:
        return log_outage_probability_exact(net.with_gamma_bar(float(db_to_linear(db)))) - log_target

    if f(lo_db) < 0 or f(hi_db) > 0:
        raise NumericalError(f"target outage {target} not bracketed by [{lo_db}, {hi_db}] dB")
    return float(db_to_linear(optimize.brentq(f, lo_db, hi_db, xtol=1e-12)))


def _sf_power(u, exponent: float):
    # 1 - (1 - e^-u)^exponent without cancellation
    with np.errstate(divide="ignore"):
        return -np.expm1(exponent * np.log(-np.expm1(-u)))


def _log_quad(f, s_lo: float, s_hi: float, breaks: Sequence[float], rtol: float, what: str) -> float:
    edges = sorted({s_lo, s_hi, *(b for b in breaks if s_lo < b < s_hi)})
    pieces = list(zip(edges[:-1], edges[1:]))
    # A coarse pass sizes an absolute floor so that pieces contributing
    # nothing measurable do not demand an unreachable relative accuracy.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        coarse = sum(abs(integrate.quad(f, a, b, epsrel=1e-6, limit=200)[0]) for a, b in pieces)
    floor = rtol * coarse / len(pieces)
    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        for a, b in pieces:
            try:
                total += integrate.quad(f, a, b, epsrel=rtol, epsabs=floor, limit=400)[0]
            except integrate.IntegrationWarning as exc:
                raise NumericalError(f"{what}: quadrature on [{a:.3g}, {b:.3g}] failed ({exc})") from exc
    return total


def _site_capacity(omega: float, alpha: float, beta: float, rtol: float) -> float:
    """``E[ln(1 + gamma)]`` for one link, integrating the CCDF against 1/(1+gamma)."""
    if omega == 0.0:
        return 0.0
    # gamma = e^s, so d(gamma)/(1+gamma) = ds / (1 + e^-s)
    log_omega = math.log(omega)

    def f(s: float) -> float:
        u = math.exp(beta / 2.0 * (s - log_omega))
        return float(_sf_power(u, alpha)) / (1.0 + math.exp(-s))

    s_lo = min(log_omega, 0.0) - 45.0
    s_hi = log_omega + (2.0 / beta) * math.log(800.0)
    return _log_quad(f, s_lo, s_hi, (0.0, log_omega), rtol, "capacity bound 1")


def capacity_bound_b1(net: NetworkConfig, quad_tol: float = 1e-9) -> float:
    """Best single-link ergodic capacity ``max_j E[log2(1 + gamma_j)]`` (bits/use).

    A lower bound on the selection capacity.
    """
    seen: dict[tuple[float, float, float], float] = {}
    for omega, alpha, beta in zip(net.omegas, net.alphas, net.betas):
        key = (float(omega), float(alpha), float(beta))
        if key not in seen:
            seen[key] = _site_capacity(*key, quad_tol)
    return LOG2E * max(seen.values())


def _require_homogeneous(net: NetworkConfig) -> LinkState:
    if not net.is_homogeneous:
        raise UnsupportedConfigurationError(
            "capacity bound 2 needs identical stations (same alpha, beta, eta, I_a, kappa)"
        )
    return net.sites[0]


def expected_max_snr(net: NetworkConfig, quad_tol: float = 1e-10) -> float:
    """``E[max gamma]`` over all ``Z*K`` links by integrating the CCDF of the maximum."""
    link = _require_homogeneous(net)
    omega = link.gain * net.gamma_bar
    if omega == 0.0:
        return 0.0
    alpha, beta = link.ew.alpha, link.ew.beta
    exponent = net.Z * net.K * alpha
    log_omega = math.log(omega)

    def f(s: float) -> float:
        u = math.exp(beta / 2.0 * (s - log_omega))
        return float(_sf_power(u, exponent)) * math.exp(s - log_omega)

    s_lo = log_omega - 45.0
    s_hi = log_omega + (2.0 / beta) * math.log(800.0)
    # Result is Omega times the integral in units of Omega.
    scaled = _log_quad(f, s_lo, s_hi, (log_omega,), quad_tol, "E[max SNR]")
    return omega * scaled


def expected_max_snr_series(net: NetworkConfig, max_terms: int = SERIES_MAX_TERMS) -> float:
    """Alternating-series form of ``E[max gamma]``.

    ``Omega Gamma(1 + 2/beta) sum_{rho>=1} binom(A, rho) (-1)^(rho+1) rho^(-2/beta)``
    with ``A = Z K alpha``. Loses accuracy to cancellation once ``A`` exceeds
    roughly 30; kept as a cross-check of :func:`expected_max_snr`.
    """
    link = _require_homogeneous(net)
    A = net.Z * net.K * link.ew.alpha
    beta = link.ew.beta
    p = 2.0 / beta
    total = 0.0
    first = A  # binom(A, 1)
    start = 1
    chunk = 512
    while start < max_terms:
        rho = np.arange(start, start + chunk, dtype=float)
        signs = np.where(rho % 2 == 1, 1.0, -1.0)
        binoms = binom_terms(A, start, chunk, first)
        terms = signs * binoms * rho ** (-p)
        partial = total + np.cumsum(terms)
        # |binom(A, rho)| ~ rho^-(A+1), so the tail past rho is ~ rho |term| / (A + p)
        tail = np.abs(terms) * np.maximum(1.0, rho / (A + p))
        done = (rho > A) & (tail <= 1e-14 * np.abs(partial))
        if np.any(done):
            total = float(partial[int(np.argmax(done))])
            break
        total = float(partial[-1])
        nxt = start + chunk
        first = float(binoms[-1]) * (A - nxt + 1.0) / nxt
        start = nxt
    else:
        raise NumericalError(f"E[max SNR] series did not converge in {max_terms} terms (A={A:.4g})")
    return link.gain * net.gamma_bar * gamma_fn(1.0 + p) * total


def capacity_bound_b2(net: NetworkConfig) -> float:
    """``log2(1 + E[max gamma])`` (bits/use); an upper bound by Jensen's inequality.

    Only defined for homogeneous networks.
    """
    return math.log2(1.0 + expected_max_snr(net))
