"""Scalar error functions of the Pade / resolvent approximants, the balance
functions behind the tau choice, measured sup errors and a-priori estimates.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .pade import build_pade
from .resolvent import build_resolvent_form, eval_resolvent
from .scalar import lambert_w0
from .selection import tau_unbounded

__all__ = [
    "ErrorRegime",
    "ErrorProfile",
    "e_k_estimate",
    "r_k_true",
    "g_k",
    "phi_functions",
    "lambda2_estimate",
    "s_k_small_argument",
    "sup_error_measured",
    "theorem1_estimate",
    "theorem1_preasymptotic",
    "theorem2_estimate",
    "sup_error_for",
]

GRID_POINTS = 2000
UNBOUNDED_CAP = 1e16

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class ErrorRegime(str, Enum):
    UNBOUNDED = "unbounded"
    BOUNDED = "bounded"


@dataclass(frozen=True)
class ErrorProfile:
    k: int
    alpha: float
    h: float
    tau: float
    sup_error: float
    argmax_lambda: float
    estimate_value: float
    regime: ErrorRegime


def _bracket_power(lam, tau, k):
    # ((sqrt(lam) - sqrt(tau)) / (sqrt(lam) + sqrt(tau)))**(2k)
    sl, st = np.sqrt(lam), math.sqrt(tau)
    return ((sl - st) / (sl + st)) ** (2 * k)


def e_k_estimate(lam, k, alpha, tau):
    """Leading term 2 sin(alpha pi) lam**-alpha [..]**(2k) of lam**-alpha - R(lam)."""
    lam = np.asarray(lam, dtype=float)
    out = 2.0 * math.sin(alpha * math.pi) * lam ** -alpha * _bracket_power(lam, tau, k)
    return float(out) if out.ndim == 0 else out


def r_k_true(lam, form):
    """(1 + h lam**alpha)**-1 - S(lam) for a resolvent form."""
    lam = np.asarray(lam, dtype=float)
    out = 1.0 / (1.0 + form.h * lam ** form.alpha) - eval_resolvent(form, lam)
    return float(out) if np.ndim(out) == 0 else out


def g_k(lam, k, alpha, h, tau):
    lam = np.asarray(lam, dtype=float)
    lm = lam ** -alpha
    out = lm * _bracket_power(lam, tau, k) / (lm + h) ** 2
    return float(out) if out.ndim == 0 else out


def phi_functions(tau, k, alpha, h, c, lambda_max=None):
    """Return (phi1, phi2, phi3): g_k at c, the asymptotic height of the right
    maximum of g_k, and g_k at lambda_max (None without an upper bound)."""
    phi1 = g_k(c, k, alpha, h, tau)
    phi2 = (alpha * alpha / (4.0 * k * k * tau)) ** alpha * math.exp(-2.0 * alpha) / (h * h)
    phi3 = None if lambda_max is None else g_k(lambda_max, k, alpha, h, tau)
    return phi1, phi2, phi3


def lambda2_estimate(k, alpha, h, tau):
    """Asymptotic location of the right maximum of g_k.

    Returns ``(lambda2, s_k)`` with lambda2 = s_k * 4 k^2 tau / alpha^2.
    """
    base = 4.0 * k * k * tau / (alpha * alpha)
    s = math.exp(lambert_w0(4.0 * alpha / (h * base ** alpha)) / alpha)
    return s * base, s


def s_k_small_argument(k, alpha, h, tau):
    """Small-argument form exp((4/h) (alpha^2 / (4 k^2 tau))**alpha) of s_k."""
    return math.exp(4.0 / h * (alpha * alpha / (4.0 * k * k * tau)) ** alpha)


def _golden_max(fun, a, b, rel_tol=1e-6, max_iter=200):
    # maximise a unimodal fun on [a, b], searching in log(lambda)
    la, lb = math.log(a), math.log(b)
    x1 = lb - _GOLDEN * (lb - la)
    x2 = la + _GOLDEN * (lb - la)
    f1, f2 = fun(math.exp(x1)), fun(math.exp(x2))
    for _ in range(max_iter):
        if lb - la <= rel_tol:
            break
        if f1 < f2:
            la, x1, f1 = x1, x2, f2
            x2 = la + _GOLDEN * (lb - la)
            f2 = fun(math.exp(x2))
        else:
            lb, x2, f2 = x2, x1, f1
            x1 = lb - _GOLDEN * (lb - la)
            f1 = fun(math.exp(x1))
    if f1 >= f2:
        return math.exp(x1), f1
    return math.exp(x2), f2


def sup_error_measured(form, c, lambda_max=None, estimate=None):
    """Maximise |r_k| over [c, lambda_max], or over [c, cap] when unbounded.

    The cap is max(1e16, 10 * lambda2). A log-spaced grid of 2000 points is
    scanned, the three largest grid values are refined by golden-section
    search and the interval endpoints are checked explicitly.
    """
    if not c > 0.0:
        raise ValueError(f"c must be positive, got {c!r}")
    if lambda_max is None:
        lam2, _ = lambda2_estimate(form.k, form.alpha, form.h, form.tau)
        upper = max(UNBOUNDED_CAP, 10.0 * lam2)
        regime = ErrorRegime.UNBOUNDED
    else:
        if not lambda_max >= c:
            raise ValueError("lambda_max must be >= c")
        upper = float(lambda_max)
        regime = ErrorRegime.BOUNDED

    def err(lam):
        return abs(r_k_true(lam, form))

    best_lam, best = c, err(c)
    top_err = err(upper)
    if top_err > best:
        best_lam, best = upper, top_err
    if upper > c:
        grid = np.geomspace(c, upper, GRID_POINTS)
        vals = np.abs(r_k_true(grid, form))
        # local maxima of the grid, largest first
        interior = np.nonzero((vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:]))[0] + 1
        candidates = interior[np.argsort(vals[interior])[::-1][:3]]
        for i in candidates:
            lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, GRID_POINTS - 1)]
            lam_star, val = _golden_max(err, lo, hi)
            if val > best:
                best_lam, best = lam_star, val
        i_max = int(np.argmax(vals))
        if vals[i_max] > best:
            best_lam, best = float(grid[i_max]), float(vals[i_max])

    if estimate is None:
        estimate = math.nan
    return ErrorProfile(
        form.k, form.alpha, form.h, form.tau, float(best), float(best_lam), float(estimate), regime
    )


def theorem1_estimate(k, alpha, h, c):
    """A-priori sup error over [c, inf) with the unbounded tau choice.

    2 sin(alpha pi) c^-alpha / h * (2 k e^(1/2) / alpha)^(-4 alpha)
        * (ln[4 k^2 e / alpha^2 * (h / (c^-alpha + h))^(1/alpha)])^(2 alpha)

    The closed form is only defined while the logarithm is positive; NaN is
    returned otherwise (see :func:`theorem1_preasymptotic`).
    """
    log_arg = (
        math.log(4.0 * k * k * math.e / (alpha * alpha))
        + math.log(h / (c ** -alpha + h)) / alpha
    )
    if log_arg <= 0.0:
        return math.nan
    return (
        2.0 * math.sin(alpha * math.pi) * c ** -alpha / h
        * (2.0 * k * math.sqrt(math.e) / alpha) ** (-4.0 * alpha)
        * log_arg ** (2.0 * alpha)
    )


def theorem1_preasymptotic(k, alpha, h, c):
    """2 h sin(alpha pi) phi2(tau_k): the same estimate before the large-k
    expansion of the Lambert-W function, defined for every k."""
    tau = tau_unbounded(k, alpha, h, c).tau
    _, phi2, _ = phi_functions(tau, k, alpha, h, c)
    return 2.0 * h * math.sin(alpha * math.pi) * phi2


def theorem2_estimate(k, alpha, h, c, lambda_max):
    """A-priori error over [c, lambda_max] with the bounded tau choice."""
    if not lambda_max >= c:
        raise ValueError("lambda_max must be >= c")
    prefactor = (
        2.0 * h * math.sin(alpha * math.pi) * (c * lambda_max) ** (-alpha / 2.0)
        / ((c ** -alpha + h) * (lambda_max ** -alpha + h))
    )
    return prefactor * math.exp(-4.0 * k * (c / lambda_max) ** 0.25)


def sup_error_for(k, alpha, h, tau, c, lambda_max=None):
    """Build the resolvent form at ``tau`` and measure its sup error."""
    form = build_resolvent_form(build_pade(k, alpha, tau), h)
    return sup_error_measured(form, c, lambda_max)
