"""Scalar special functions: principal Lambert-W branch and log-gamma."""

import math

__all__ = ["lambert_w0", "log_gamma"]

_BRANCH_POINT = -1.0 / math.e


def lambert_w0(x):
    """Principal branch W0 of the Lambert-W function for real x >= -1/e.

    Solves ``w * exp(w) = x`` by Halley iteration. Starting values are the
    identity for small |x|, ``ln x - ln ln x`` for large x and the branch
    point series for negative arguments near -1/e.
    """
    x = float(x)
    if math.isnan(x) or x < _BRANCH_POINT - 4e-17:
        raise ValueError(f"lambert_w0 requires x >= -1/e, got {x!r}")
    if math.isinf(x):
        raise ValueError("lambert_w0 requires a finite argument")
    if x == 0.0:
        return 0.0
    if x <= _BRANCH_POINT:
        return -1.0

    if abs(x) < 0.3:
        w = x
    elif x > 3.0:
        lx = math.log(x)
        w = lx - math.log(lx)
    elif x > 0.0:
        w = math.log1p(x)
    else:
        p = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3

    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-16 * (1.0 + abs(w)):
            break
    return max(w, -1.0)


def log_gamma(x):
    """Natural log of the gamma function for x > 0."""
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise ValueError(f"log_gamma requires finite x > 0, got {x!r}")
    return math.lgamma(x)
