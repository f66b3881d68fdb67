"""Choice of the centre tau of the Pade form, for spectra in [c, inf) or [c, lambda_max].

Besides the h-dependent parameters there are the h-independent reference
parameters (``reference_unbounded`` / ``reference_bounded``) that come from
approximating lam**-alpha alone; the experiments compare against them.
"""

from dataclasses import dataclass
from enum import Enum
import math
from typing import Optional

from .scalar import lambert_w0

__all__ = [
    "Regime",
    "SpectrumBounds",
    "TauChoice",
    "phi_k",
    "tau_unbounded",
    "tau_reference_unbounded",
    "sigma_k",
    "tau_bounded",
    "k_bar",
    "tau_switching",
    "tau_reference_bounded",
]


class Regime(str, Enum):
    UNBOUNDED = "unbounded"
    BOUNDED = "bounded"
    REFERENCE_UNBOUNDED = "reference_unbounded"
    REFERENCE_BOUNDED = "reference_bounded"


@dataclass(frozen=True)
class SpectrumBounds:
    c: float
    lambda_max: Optional[float] = None

    def __post_init__(self):
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ValueError(f"spectral lower bound c must be positive, got {self.c!r}")
        if self.lambda_max is not None and not self.lambda_max > self.c:
            raise ValueError(
                f"lambda_max must exceed c, got c={self.c!r}, lambda_max={self.lambda_max!r}"
            )


@dataclass(frozen=True)
class TauChoice:
    tau: float
    regime: Regime
    k: float
    k_bar: Optional[float] = None


def _check(k, alpha, h=None, c=None):
    if not k >= 1:
        raise ValueError(f"k must be >= 1, got {k!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if h is not None and not h > 0.0:
        raise ValueError(f"h must be positive, got {h!r}")
    if c is not None and not c > 0.0:
        raise ValueError(f"c must be positive, got {c!r}")


def _check_bounded(c, lambda_max):
    if not lambda_max >= c:
        raise ValueError(f"lambda_max must be >= c, got c={c!r}, lambda_max={lambda_max!r}")


def phi_k(k, alpha, h, c):
    """alpha / (2 k e) * ((c**-alpha + h) / h)**(1/alpha)."""
    _check(k, alpha, h, c)
    return alpha / (2.0 * k * math.e) * ((c ** -alpha + h) / h) ** (1.0 / alpha)


def tau_unbounded(k, alpha, h, c):
    """Near-optimal tau for a spectrum in [c, inf): balances g_k(c) against
    the right maximum of g_k."""
    phi = phi_k(k, alpha, h, c)
    w = lambert_w0(2.0 * k / (phi * alpha))
    tau = c * phi * phi * math.exp(2.0 * w)
    return TauChoice(tau, Regime.UNBOUNDED, k)


def tau_reference_unbounded(k, alpha, c):
    """h-independent reference tau tuned for lam**-alpha on [c, inf)."""
    _check(k, alpha, c=c)
    base = alpha / (2.0 * k * math.e)
    w = lambert_w0(4.0 * k * k * math.e / (alpha * alpha))
    return TauChoice(c * base * base * math.exp(2.0 * w), Regime.REFERENCE_UNBOUNDED, k)


def sigma_k(k, alpha, h, c, lambda_max):
    _check(k, alpha, h, c)
    _check_bounded(c, lambda_max)
    ratio = (lambda_max ** -alpha + h) / (c ** -alpha + h)
    # log of (lambda_max / c) * ratio**(2/alpha), expanded to avoid overflow
    log_arg = math.log(lambda_max / c) + 2.0 / alpha * math.log(ratio)
    return alpha * math.sqrt(lambda_max) / (8.0 * k) * log_arg


def _quadratic_tau(sigma, c, lambda_max):
    # positive root of tau + 2 sigma sqrt(tau) - sqrt(c lambda_max) = 0 in sqrt(tau)
    disc = math.sqrt(sigma * sigma + math.sqrt(c * lambda_max))
    if sigma > 0.0:
        # -sigma + disc rewritten without cancellation
        root = math.sqrt(c * lambda_max) / (sigma + disc)
    else:
        root = disc - sigma
    return root * root


def tau_bounded(k, alpha, h, c, lambda_max):
    """tau for a spectrum in [c, lambda_max], used once k passes the threshold."""
    sigma = sigma_k(k, alpha, h, c, lambda_max)
    return TauChoice(_quadratic_tau(sigma, c, lambda_max), Regime.BOUNDED, k)


def k_bar(alpha, h, c, lambda_max):
    """Rule size beyond which the right maximum of g_k leaves [c, lambda_max].

    Returns 0 when the logarithm in the closed form is <= 0, meaning the
    bounded regime applies for every k.
    """
    _check(1, alpha, h, c)
    _check_bounded(c, lambda_max)
    log_arg = (
        math.log(lambda_max / c) + 2.0 + 2.0 / alpha * math.log(h / (c ** -alpha + h))
    )
    if log_arg <= 0.0:
        return 0.0
    return alpha / (2.0 * math.sqrt(2.0)) * math.sqrt(log_arg) * (lambda_max / c) ** 0.25


def tau_switching(k, alpha, h, bounds):
    """Unbounded choice below the threshold k_bar, bounded choice from it on."""
    if bounds.lambda_max is None:
        return tau_unbounded(k, alpha, h, bounds.c)
    kb = k_bar(alpha, h, bounds.c, bounds.lambda_max)
    if k < kb:
        choice = tau_unbounded(k, alpha, h, bounds.c)
    else:
        choice = tau_bounded(k, alpha, h, bounds.c, bounds.lambda_max)
    return TauChoice(choice.tau, choice.regime, k, kb)


def tau_reference_bounded(k, alpha, c, lambda_max):
    """h-independent reference tau for a spectrum in [c, lambda_max]."""
    _check(k, alpha, c=c)
    _check_bounded(c, lambda_max)
    sigma = alpha * math.sqrt(lambda_max) / (8.0 * k) * math.log(lambda_max / c)
    return TauChoice(_quadratic_tau(sigma, c, lambda_max), Regime.REFERENCE_BOUNDED, k)
