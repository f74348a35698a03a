"""Exponentiated-Weibull irradiance fading.

``F(I) = (1 - exp[-(I/eta)^beta])^alpha`` with shape parameters ``alpha``,
``beta`` and scale ``eta``. All distribution functions broadcast over numpy
arrays.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gamma as gamma_fn

from .errors import DomainError, NumericalError

SERIES_RTOL = 1e-12
SERIES_MIN_TERMS = 10
SERIES_MAX_TERMS = 100_000
_CHUNK = 512


@dataclass(frozen=True)
class EwParams:
    """Exponentiated-Weibull parameters.

    Attributes
    ----------
    alpha, beta : float
        Shape parameters.
    eta : float
        Scale parameter.
    source_scintillation : float or None
        Scintillation index the parameters were fitted from, if any.
    """

    alpha: float
    beta: float
    eta: float
    source_scintillation: float | None = None

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "eta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"EW parameter {name} must be positive and finite, got {value}")


def gen_binom(x: float, r: int) -> float:
    """Generalised binomial coefficient ``x choose r`` for real ``x``.

    Uses the running product ``prod_{i=1..r} (x - i + 1) / i``; exact for
    integer ``x`` and free of gamma-function poles.
    """
    if r < 0:
        raise DomainError(f"binomial lower index must be non-negative, got {r}")
    out = 1.0
    for i in range(1, r + 1):
        out *= (x - i + 1) / i
    return out


def binom_terms(x: float, start: int, count: int, first: float) -> np.ndarray:
    """``binom(x, k)`` for ``k = start .. start + count - 1`` given ``first = binom(x, start)``."""
    ks = np.arange(start + 1, start + count, dtype=float)
    ratios = (x - ks + 1.0) / ks
    return first * np.concatenate(([1.0], np.cumprod(ratios)))


def _reduced(I, p: EwParams):
    I = np.asarray(I, dtype=float)
    if np.any(I < 0):
        raise DomainError("irradiance must be non-negative")
    with np.errstate(over="ignore"):
        return I, (I / p.eta) ** p.beta


def ew_pdf(I, p: EwParams):
    """Probability density at irradiance ``I``."""
    I, y = _reduced(I, p)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = (
            p.alpha
            * p.beta
            / p.eta
            * (I / p.eta) ** (p.beta - 1.0)
            * np.exp(-y)
            * (-np.expm1(-y)) ** (p.alpha - 1.0)
        )
    return out if out.ndim else float(out)


def ew_logcdf(I, p: EwParams):
    """Natural log of the CDF; stays finite deep in the lower tail."""
    _, y = _reduced(I, p)
    with np.errstate(divide="ignore"):
        out = p.alpha * np.log(-np.expm1(-y))
    return out if out.ndim else float(out)


def ew_cdf(I, p: EwParams):
    """Cumulative distribution function."""
    _, y = _reduced(I, p)
    out = (-np.expm1(-y)) ** p.alpha
    return out if out.ndim else float(out)


def ew_sf(I, p: EwParams):
    """Survival function ``1 - F(I)`` computed without cancellation."""
    _, y = _reduced(I, p)
    with np.errstate(divide="ignore"):
        out = -np.expm1(p.alpha * np.log(-np.expm1(-y)))
    return out if out.ndim else float(out)


def ew_quantile(u, p: EwParams):
    """Inverse CDF for ``0 <= u < 1``."""
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u >= 1)) or np.any(np.isnan(u)):
        raise DomainError("quantile level must lie in [0, 1)")
    out = p.eta * (-np.log1p(-(u ** (1.0 / p.alpha)))) ** (1.0 / p.beta)
    return out if out.ndim else float(out)


def ew_sample(rng: np.random.Generator, p: EwParams, size=None):
    """Draw irradiance samples by inverse-transform sampling."""
    return ew_quantile(rng.random(size), p)


def _g_series(n: int, alpha: float, beta: float) -> float | None:
    """Series for ``g_n``; ``None`` when it does not settle within the term cap."""
    power = 1.0 + n / beta
    x = alpha - 1.0
    total = 0.0
    biggest = 0.0
    first = 1.0
    start = 0
    # Terms decay like k^-(alpha + 1 + n/beta); the tail beyond k is about
    # k * |term| / (alpha + n/beta).
    decay = alpha + n / beta
    while start < SERIES_MAX_TERMS:
        binoms = binom_terms(x, start, _CHUNK, first)
        ks = np.arange(start, start + _CHUNK, dtype=float)
        signs = np.where(ks % 2 == 0, 1.0, -1.0)
        terms = signs * binoms / (ks + 1.0) ** power
        partial = total + np.cumsum(terms)
        biggest = max(biggest, float(np.max(np.abs(terms))))
        tail = np.abs(terms) * np.maximum(1.0, ks / decay)
        ok = (ks + 1 >= SERIES_MIN_TERMS) & (ks > x) & (tail <= SERIES_RTOL * np.abs(partial))
        if np.any(ok):
            idx = int(np.argmax(ok))
            total = float(partial[idx])
            # Reject results dominated by rounding from large alternating terms.
            if biggest * 1e-16 > 1e-10 * abs(total):
                return None
            return total
        total = float(partial[-1])
        next_k = start + _CHUNK
        first = float(binoms[-1]) * (x - next_k + 1.0) / next_k
        start = next_k
    return None


def _g_quadrature(n: int, alpha: float, beta: float) -> float:
    # g_n = int_0^inf t^(n/beta) e^-t (1 - e^-t)^(alpha-1) dt / Gamma(1 + n/beta).
    # On [0, 1] the t^(alpha - 1 + n/beta) singularity goes into an algebraic weight.
    lead = alpha - 1.0 + n / beta

    def near(t: float) -> float:
        ratio = 1.0 if t == 0.0 else -math.expm1(-t) / t
        return math.exp(-t) * ratio ** (alpha - 1.0)

    def far(t: float) -> float:
        return t ** (n / beta) * math.exp(-t) * (-math.expm1(-t)) ** (alpha - 1.0)

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            total = integrate.quad(
                near, 0.0, 1.0, weight="alg", wvar=(lead, 0.0), epsrel=1e-12, epsabs=0.0
            )[0]
            for a, b in ((1.0, 10.0), (10.0, 60.0), (60.0, 800.0)):
                total += integrate.quad(far, a, b, epsrel=1e-12, epsabs=0.0, limit=400)[0]
        except integrate.IntegrationWarning as exc:
            raise NumericalError(
                f"moment quadrature failed for alpha={alpha}, beta={beta}: {exc}"
            ) from exc
    return total / gamma_fn(1.0 + n / beta)


def ew_g(n: int, alpha: float, beta: float) -> float:
    """Constant ``g_n(alpha, beta)`` with ``E[I^n] = alpha eta^n Gamma(1+n/beta) g_n``.

    ``g_1`` is the normalising constant used by the scintillation fit. The
    alternating binomial series is used when it converges cleanly, adaptive
    quadrature otherwise.
    """
    if n < 1:
        raise DomainError(f"moment order must be a positive integer, got {n}")
    if not (alpha > 0 and beta > 0):
        raise DomainError("alpha and beta must be positive")
    value = _g_series(n, alpha, beta)
    if value is None:
        value = _g_quadrature(n, alpha, beta)
    return value


def ew_moment(n: int, p: EwParams) -> float:
    """Raw moment ``E[I^n]``."""
    return p.alpha * p.eta**n * gamma_fn(1.0 + n / p.beta) * ew_g(n, p.alpha, p.beta)
