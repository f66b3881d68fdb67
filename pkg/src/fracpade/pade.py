"""Pade-type rational approximant of lambda**(-alpha) built from Gauss-Jacobi
quadrature, in partial-fraction and pole-zero form.
"""

from dataclasses import dataclass
import math

import numpy as np

from .jacobi import build_rule, jacobi_zeros
from .scalar import log_gamma

__all__ = [
    "PadeForm",
    "build_pade",
    "eval_pade",
    "eval_pade_polyform",
    "eval_pade_zeropole",
]


@dataclass(frozen=True)
class PadeForm:
    """Rational approximant R(lam) = sum_j gamma_j / (eta_j + lam) of lam**-alpha.

    ``pf_shifts`` are sorted increasingly with ``pf_coeffs`` permuted to match.
    ``num_zeros`` holds the k-1 values eps_r (numerator roots sit at -eps_r)
    and ``leading_chi`` the numerator leading coefficient, so that
    R(lam) = chi * prod(lam + eps_r) / prod(lam + eta_j).
    """

    k: int
    alpha: float
    tau: float
    pf_coeffs: np.ndarray
    pf_shifts: np.ndarray
    num_zeros: np.ndarray
    leading_chi: float

    def __post_init__(self):
        for arr in (self.pf_coeffs, self.pf_shifts, self.num_zeros):
            arr.setflags(write=False)

    def __call__(self, lam):
        return eval_pade(self, lam)


def _log_binom(x, m):
    # generalized binomial (x choose m), x > m - 1
    return log_gamma(x + 1.0) - log_gamma(m + 1.0) - log_gamma(x - m + 1.0)


def build_pade(k, alpha, tau):
    """Build the (k-1, k) approximant of lam**-alpha centred at ``tau``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not (tau > 0.0 and math.isfinite(tau)):
        raise ValueError(f"tau must be a positive finite number, got {tau!r}")
    rule = build_rule(k, alpha)
    w = rule.weights

    scale = 2.0 * math.sin(alpha * math.pi) * tau ** (1.0 - alpha) / math.pi
    gamma = scale * w / rule.one_plus
    eta = tau * rule.one_minus / rule.one_plus
    order = np.argsort(eta)
    gamma, eta = gamma[order], eta[order]

    if k > 1:
        zeta = jacobi_zeros(k - 1, alpha, 1.0 - alpha)
        eps = np.sort(tau * (1.0 - zeta) / (1.0 + zeta))
    else:
        eps = np.empty(0)

    # chi = eta_k tau^-alpha C(k+alpha-1, k-1)/C(k-alpha, k) prod_{j<k} eta_j/eps_j
    log_chi = (
        -alpha * math.log(tau)
        + _log_binom(k + alpha - 1.0, k - 1)
        - _log_binom(k - alpha, k)
        + float(np.sum(np.log(eta)))
        - float(np.sum(np.log(eps)))
    )
    chi = math.exp(log_chi)
    return PadeForm(int(k), float(alpha), float(tau), gamma, eta, eps, chi)


def eval_pade(form, lam):
    """Evaluate sum_j gamma_j / (eta_j + lam); vectorised over ``lam``."""
    lam_arr = np.asarray(lam, dtype=float)
    out = np.sum(form.pf_coeffs / (form.pf_shifts + lam_arr[..., None]), axis=-1)
    return float(out) if lam_arr.ndim == 0 else out


def eval_pade_polyform(form, lam):
    """Return (p(lam), q(lam)) from the product forms.

    p(lam) = chi * prod(lam + eps_r) and q(lam) = prod(lam + eta_j). Negative
    ``lam`` is allowed. For large k the products may overflow; the ratio is
    better obtained from :func:`eval_pade`.
    """
    lam = float(lam)
    p = form.leading_chi * float(np.prod(lam + form.num_zeros))
    q = float(np.prod(lam + form.pf_shifts))
    return p, q


def eval_pade_zeropole(form, lam):
    """Evaluate chi * prod(lam + eps_r) / prod(lam + eta_j) as a product of
    paired factor ratios, which neither overflows nor underflows for large k.
    """
    lam_arr = np.asarray(lam, dtype=float)
    lam_col = lam_arr[..., None]
    ratios = (lam_col + form.num_zeros) / (lam_col + form.pf_shifts[:-1])
    out = form.leading_chi * np.prod(ratios, axis=-1) / (lam_arr + form.pf_shifts[-1])
    return float(out) if lam_arr.ndim == 0 else out
