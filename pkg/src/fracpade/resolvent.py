"""Rational approximant S(lam) = p / (p + h q) of (1 + h lam**alpha)**-1 in
pole-residue form.

The poles -etabar_j are the roots of p + h q, i.e. the solutions of
R(lam) = -h with R = p / q = sum_j gamma_j / (lam + eta_j). Since every
gamma_j > 0, R is strictly decreasing on each interval between consecutive
poles of R and on (-inf, -eta_max), so each interval holds exactly one root.
Each root is refined in coordinates x = lam + a anchored at the nearest pole
or zero of R, with R taken from its pole-zero product; this keeps full
relative accuracy both for large h (roots hug poles of R) and small h (roots
hug zeros of R).
"""

from dataclasses import dataclass
import math

import numpy as np

from .pade import PadeForm

__all__ = [
    "ResolventForm",
    "PoleSearchError",
    "build_resolvent_form",
    "eval_resolvent",
    "resolvent_defects",
]

_EPS = np.finfo(float).eps
_ROOT_BUDGET = 300


class PoleSearchError(RuntimeError):
    """Raised when a pole of S cannot be located or two poles coincide."""


@dataclass(frozen=True)
class ResolventForm:
    """S(lam) = sum_j residues[j] / (poles_neg[j] + lam), poles_neg ascending.

    Each pole is stored twice: as the float ``poles_neg[j]`` and as
    ``anchors[j] - offsets[j]``, where the anchor is the nearest pole or zero
    of the source approximant and the offset is known to full relative
    precision. Differences to source poles and zeros are formed from the
    anchored pair.
    """

    k: int
    alpha: float
    tau: float
    h: float
    poles_neg: np.ndarray
    residues: np.ndarray
    source: PadeForm
    anchors: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        for arr in (self.poles_neg, self.residues, self.anchors, self.offsets):
            arr.setflags(write=False)

    def shifted_gaps(self, j, values):
        """``values - poles_neg[j]`` evaluated in anchored coordinates."""
        return (np.asarray(values) - self.anchors[j]) + self.offsets[j]

    def __call__(self, lam):
        return eval_resolvent(self, lam)


def _paired_ratio(chi, zeros, poles, x):
    """chi * prod(x + zeros) / prod(x + poles) and its log-derivative.

    Factors are paired (both arrays sorted) so the running product stays in
    floating-point range for large k.
    """
    zf = x + zeros
    pf = x + poles
    m = min(len(zf), len(pf))
    value = chi * float(np.prod(zf[:m] / pf[:m]))
    value *= float(np.prod(zf[m:])) / float(np.prod(pf[m:]))
    dlog = float(np.sum(1.0 / zf)) - float(np.sum(1.0 / pf))
    return value, dlog


class _Anchor:
    """R(lam) + h near lam = -a, written in x = lam + a.

    For a pole anchor the anchor factor is removed from the denominator and
    Newton runs on x * (R + h), smooth through the pole. For a zero anchor
    the factor is removed from the numerator and Newton runs on R + h.
    """

    def __init__(self, form, value, is_pole, h):
        self.value = value
        self.is_pole = is_pole
        self.h = h
        self.chi = form.leading_chi
        zeros = form.num_zeros - value
        poles = form.pf_shifts - value
        if is_pole:
            poles = poles[np.abs(poles) != 0.0]
        else:
            zeros = zeros[np.abs(zeros) != 0.0]
        self.zeros, self.poles = zeros, poles

    def f(self, x):
        v, _ = _paired_ratio(self.chi, self.zeros, self.poles, x)
        return (v / x if self.is_pole else v * x) + self.h

    def newton_step(self, x):
        v, dlog = _paired_ratio(self.chi, self.zeros, self.poles, x)
        if self.is_pole:
            g, dg = v + self.h * x, v * dlog + self.h
        else:
            g, dg = v * x + self.h, v + v * x * dlog
        return g / dg if dg != 0.0 else math.inf


def _secular_root(anchor, x_lo, x_hi):
    """Root in (x_lo, x_hi) of the decreasing f = R + h, f(x_lo) > 0 > f(x_hi).

    Safeguarded Newton: steps leaving the bracket become bisection steps.
    """
    lo, hi = x_lo, x_hi
    x = 0.5 * (lo + hi)
    for _ in range(_ROOT_BUDGET):
        f = anchor.f(x)
        if f == 0.0:
            return x
        if f > 0.0:
            lo = x
        else:
            hi = x
        x_new = x - anchor.newton_step(x)
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = 0.5 * (lo + hi)
        tol = 2.0 * _EPS * max(abs(x), abs(x_new))
        if abs(x_new - x) <= tol or hi - lo <= 2.0 * _EPS * max(abs(lo), abs(hi)):
            return x_new
        x = x_new
    raise PoleSearchError("pole search did not converge within the iteration budget")


def _find_poles(form, h):
    eta, eps = form.pf_shifts, form.num_zeros
    k = form.k
    anchors = []
    offsets = []
    # R > -h on (-eta[i+1], -eps[i]] and R falls to -inf at -eta[i], so the
    # root lies in (-eps[i], -eta[i]); interlacing gives eta[i] < eps[i] < eta[i+1]
    for i in range(k - 1):
        if not eta[i] < eps[i] < eta[i + 1]:
            raise PoleSearchError("zeros and poles of the approximant do not interlace")
        near_pole = _Anchor(form, eta[i], True, h)
        half = 0.5 * (eps[i] - eta[i])
        f_mid = near_pole.f(-half)
        if f_mid == 0.0:
            anchors.append(eta[i])
            offsets.append(-half)
        elif f_mid < 0.0:
            # root between the zero and the midpoint
            near_zero = _Anchor(form, eps[i], False, h)
            anchors.append(eps[i])
            offsets.append(_secular_root(near_zero, 0.0, half))
        else:
            anchors.append(eta[i])
            offsets.append(_secular_root(near_pole, -half, 0.0))

    # leftmost interval (-inf, -eta_max); |R| <= h/2 beyond 2 sum(gamma)/h
    anchor = _Anchor(form, eta[-1], True, h)
    x_lo = -2.0 * float(np.sum(form.pf_coeffs)) / h
    while anchor.f(x_lo) <= 0.0:
        x_lo *= 2.0
    anchors.append(eta[-1])
    offsets.append(_secular_root(anchor, x_lo, 0.0))
    return np.asarray(anchors), np.asarray(offsets)


def _product_residues(form, h, anchors, offsets):
    # residue_j = chi * prod_r (eps_r - pbar_j) / (h * prod_{i != j} (pbar_i - pbar_j))
    k = form.k
    eps = form.num_zeros
    residues = np.empty(k)
    for j in range(k):
        num = (eps - anchors[j]) + offsets[j]
        # pbar_i - pbar_j = (a_i - a_j) - (x_i - x_j)
        den = (anchors - anchors[j]) - (offsets - offsets[j])
        den = np.delete(den, j)
        log_mag = math.log(form.leading_chi) - math.log(h)
        log_mag += float(np.sum(np.log(np.abs(num)))) - float(np.sum(np.log(np.abs(den))))
        sign = (-1.0) ** (int(np.sum(num < 0)) + int(np.sum(den < 0)))
        residues[j] = sign * math.exp(log_mag)
    return residues


def build_resolvent_form(pade, h):
    """Pole-residue form of S = p / (p + h q) for the approximant ``pade``."""
    if not (h > 0.0 and math.isfinite(h)):
        raise ValueError(f"h must be a positive finite number, got {h!r}")
    h = float(h)
    anchors, offsets = _find_poles(pade, h)
    # lam = -a + x, so the positive pole magnitude is a - x
    poles = anchors - offsets
    order = np.argsort(poles)
    poles, anchors, offsets = poles[order], anchors[order], offsets[order]
    if np.any(poles <= 0.0):
        raise PoleSearchError("found a nonnegative pole of S; expected all poles negative")
    if np.any(np.diff(poles) <= 1e-12 * poles[1:]):
        raise PoleSearchError("two poles of S coincide to within 1e-12 relative")
    residues = _product_residues(pade, h, anchors, offsets)
    return ResolventForm(
        pade.k, pade.alpha, pade.tau, h, poles, residues, pade, anchors, offsets
    )


def eval_resolvent(form, lam):
    """Evaluate sum_j residue_j / (pole_j + lam); vectorised over ``lam``."""
    lam_arr = np.asarray(lam, dtype=float)
    out = np.sum(form.residues / (form.poles_neg + lam_arr[..., None]), axis=-1)
    return float(out) if lam_arr.ndim == 0 else out


def resolvent_defects(form):
    """Scaled defects |p + h q| / max(|p|, h |q|) at each computed pole.

    Since p + h q = q (R + h), this equals |R + h| / max(|R|, h) with
    R = p / q taken from the pole-zero products in anchored coordinates,
    paired factor by factor so nothing overflows.
    """
    src = form.source
    out = np.empty(form.k)
    for j in range(form.k):
        zero_gaps = form.shifted_gaps(j, src.num_zeros)
        pole_gaps = form.shifted_gaps(j, src.pf_shifts)
        r, _ = _paired_ratio(src.leading_chi, zero_gaps, pole_gaps, 0.0)
        out[j] = abs(r + form.h) / max(abs(r), form.h)
    return out
