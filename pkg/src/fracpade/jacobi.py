"""Jacobi polynomials, their zeros and the Gauss-Jacobi rule for the weight
``(1 - t)**(-alpha) * (1 + t)**(alpha - 1)`` on [-1, 1].
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .scalar import log_gamma

__all__ = [
    "JacobiRule",
    "QuadratureError",
    "MAX_RULE_SIZE",
    "jacobi_eval",
    "jacobi_zeros",
    "build_rule",
]

MAX_RULE_SIZE = 200

_NEWTON_BUDGET = 100
_STEP_TOL = 1e-13


class QuadratureError(RuntimeError):
    """Raised when zero finding for a Jacobi polynomial does not converge."""


@dataclass(frozen=True)
class JacobiRule:
    """k-point Gauss-Jacobi rule for exponents (-alpha, alpha - 1).

    Attributes
    ----------
    k : int
        Number of nodes.
    alpha : float
        Fractional order in (0, 1).
    nodes : ndarray
        Strictly increasing nodes in (-1, 1).
    weights : ndarray
        Positive weights, summing to pi / sin(alpha * pi).
    one_minus, one_plus : ndarray
        1 - nodes and 1 + nodes, each accurate to full relative precision
        (the nodes cluster at the endpoints, where forming 1 -+ t from the
        rounded node loses digits).
    """

    k: int
    alpha: float
    nodes: np.ndarray
    weights: np.ndarray
    one_minus: np.ndarray
    one_plus: np.ndarray

    def __post_init__(self):
        for arr in (self.nodes, self.weights, self.one_minus, self.one_plus):
            arr.setflags(write=False)

    def integrate(self, f):
        """Apply the rule to a vectorised callable ``f(t)``."""
        return float(np.dot(self.weights, f(self.nodes)))


def _check_params(a, b):
    if not (a > -1.0 and b > -1.0):
        raise ValueError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")


def _jacobi_value(n, a, b, t):
    p_prev = np.ones_like(t)
    if n == 0:
        return p_prev
    p = 0.5 * (a + b + 2.0) * t + 0.5 * (a - b)
    for m in range(2, n + 1):
        s = 2.0 * m + a + b
        c1 = 2.0 * m * (m + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * t + a * a - b * b)
        c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return p


def _jacobi_value_near_one(n, a, b, x):
    # P_n^{(a,b)}(1 - x) with the offset x carried exactly through the recurrence
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p = (a + 1.0) - 0.5 * (a + b + 2.0) * x
    for m in range(2, n + 1):
        s = 2.0 * m + a + b
        c1 = 2.0 * m * (m + a + b) * (s - 2.0)
        c2 = (s - 1.0) * ((s * (s - 2.0) + a * a - b * b) - s * (s - 2.0) * x)
        c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return p


def _offset_value_and_derivative(n, a, b, x):
    """P_n(1 - x) and P_n'(1 - x)."""
    value = _jacobi_value_near_one(n, a, b, x)
    deriv = 0.5 * (n + a + b + 1.0) * _jacobi_value_near_one(n - 1, a + 1.0, b + 1.0, x)
    return value, deriv


def _polish_offsets(n, a, b, x, sweeps=3):
    # Newton on x -> P_n(1 - x); dP/dx = -P'
    for _ in range(sweeps):
        value, deriv = _offset_value_and_derivative(n, a, b, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_new = x + value / deriv
        ok = np.isfinite(x_new) & (x_new > 0.0) & (x_new < 2.0)
        x = np.where(ok, x_new, x)
    return x


def jacobi_eval(n, a, b, t):
    """Evaluate P_n^{(a,b)}(t) and its derivative by the three-term recurrence.

    The derivative uses ``d/dt P_n^{(a,b)} = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}``,
    which stays regular at the endpoints. Scalars in give floats out; arrays
    give arrays.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    _check_params(a, b)
    scalar = np.ndim(t) == 0
    tt = np.asarray(t, dtype=float)
    value = _jacobi_value(n, a, b, tt)
    if n == 0:
        deriv = np.zeros_like(tt)
    else:
        deriv = 0.5 * (n + a + b + 1.0) * _jacobi_value(n - 1, a + 1.0, b + 1.0, tt)
    if scalar:
        return float(value), float(deriv)
    return value, deriv


def _sign_change_brackets(n, a, b):
    # grid uniform in the angle variable; zeros are roughly equispaced there
    m = 16 * n + 32
    while m <= 1 << 20:
        theta = np.linspace(np.pi, 0.0, m + 2)[1:-1]
        t = np.cos(theta)
        vals = _jacobi_value(n, a, b, t)
        s = np.sign(vals)
        idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
        exact = np.nonzero(s == 0)[0]
        if len(idx) + len(exact) == n:
            lo = list(t[idx])
            hi = list(t[idx + 1])
            for e in exact:
                lo.append(t[e])
                hi.append(t[e])
            order = np.argsort(lo)
            return np.asarray(lo)[order], np.asarray(hi)[order]
        m *= 4
    raise QuadratureError(f"could not bracket the {n} zeros of P_{n}^({a},{b})")


def jacobi_zeros(n, a, b):
    """Zeros of P_n^{(a,b)} in increasing order.

    Each zero is isolated by a sign change on an angular grid and then
    polished by Newton's method, falling back to bisection whenever a
    Newton step leaves its bracket.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    _check_params(a, b)
    if n == 1:
        return np.array([(b - a) / (a + b + 2.0)])

    lo, hi = _sign_change_brackets(n, a, b)
    f_lo = _jacobi_value(n, a, b, lo)
    x = 0.5 * (lo + hi)
    done = lo == hi
    for _ in range(_NEWTON_BUDGET):
        val, der = jacobi_eval(n, a, b, x)
        hit = val == 0.0
        done |= hit
        # shrink brackets
        left = np.sign(val) == np.sign(f_lo)
        lo = np.where(left & ~hit, x, lo)
        f_lo = np.where(left & ~hit, val, f_lo)
        hi = np.where(~left & ~hit, x, hi)

        with np.errstate(divide="ignore", invalid="ignore"):
            step = val / der
        x_new = x - step
        # quadratic convergence: once a step is below 1e-13 the error left
        # after taking it is far under rounding level. The bracket may already
        # have collapsed onto x, so a tiny step is accepted without the bracket test.
        scale = np.maximum(np.abs(x), 0.5)
        tiny = np.abs(step) <= _STEP_TOL * scale
        bad = ~np.isfinite(x_new) | (x_new < lo) | (x_new > hi)
        x_new = np.where(bad & ~tiny, 0.5 * (lo + hi), x_new)
        converged = tiny | ((hi - lo) <= 4.0 * np.finfo(float).eps * scale)
        x = np.where(done, x, x_new)
        done |= converged
        if done.all():
            break
    else:
        raise QuadratureError(
            f"Newton/bisection did not converge for zeros of P_{n}^({a},{b})"
        )
    return np.sort(x)


def _log_weight_constant(n, a, b):
    return (
        (a + b + 1.0) * math.log(2.0)
        + log_gamma(n + a + 1.0)
        + log_gamma(n + b + 1.0)
        - log_gamma(n + a + b + 1.0)
        - log_gamma(n + 1.0)
    )


def build_rule(k, alpha):
    """Gauss-Jacobi rule with k nodes for the weight (1-t)^-alpha (1+t)^(alpha-1)."""
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= MAX_RULE_SIZE:
        raise ValueError(f"rule size k must be an integer in [1, {MAX_RULE_SIZE}], got {k!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    return _cached_rule(int(k), float(alpha))


@lru_cache(maxsize=512)
def _cached_rule(k, alpha):
    # rules are immutable (read-only arrays), so sharing cached instances is safe
    a, b = -alpha, alpha - 1.0
    if k == 1:
        nodes = np.array([2.0 * alpha - 1.0])
        weights = np.array([math.pi / math.sin(alpha * math.pi)])
        return JacobiRule(k, float(alpha), nodes, weights, 1.0 - nodes, 1.0 + nodes)

    nodes = jacobi_zeros(k, a, b)
    # refine each node as an offset from its nearer endpoint; the left half
    # uses the reflection P_n^{(a,b)}(-t) = (-1)^n P_n^{(b,a)}(t)
    right = nodes >= 0.0
    offsets = np.where(right, 1.0 - nodes, 1.0 + nodes)
    offsets[right] = _polish_offsets(k, a, b, offsets[right])
    offsets[~right] = _polish_offsets(k, b, a, offsets[~right])
    one_minus = np.where(right, offsets, 2.0 - offsets)
    one_plus = np.where(right, 2.0 - offsets, offsets)
    nodes = np.where(right, 1.0 - offsets, offsets - 1.0)

    # |P_k'| at each node, from the same offset coordinates
    deriv = np.empty(k)
    _, deriv[right] = _offset_value_and_derivative(k, a, b, offsets[right])
    _, deriv[~right] = _offset_value_and_derivative(k, b, a, offsets[~right])
    log_w = (
        _log_weight_constant(k, a, b)
        - np.log(one_minus)
        - np.log(one_plus)
        - 2.0 * np.log(np.abs(deriv))
    )
    weights = np.exp(log_w)
    return JacobiRule(k, float(alpha), nodes, weights, one_minus, one_plus)
