"""Rational approximation of the fractional resolvent (I + h A^alpha)^-1.

The pipeline runs Gauss-Jacobi rule -> Pade form of lam^-alpha -> pole-residue
form of (1 + h lam^alpha)^-1 -> shifted solves with an operator, with a tuned
choice of the Pade centre tau and a-priori error estimates.
"""

from .scalar import lambert_w0, log_gamma
from .jacobi import JacobiRule, QuadratureError, build_rule, jacobi_eval, jacobi_zeros
from .pade import PadeForm, build_pade, eval_pade, eval_pade_polyform, eval_pade_zeropole
from .resolvent import (
    PoleSearchError,
    ResolventForm,
    build_resolvent_form,
    eval_resolvent,
    resolvent_defects,
)
from .selection import (
    Regime,
    SpectrumBounds,
    TauChoice,
    k_bar,
    phi_k,
    sigma_k,
    tau_bounded,
    tau_reference_bounded,
    tau_reference_unbounded,
    tau_switching,
    tau_unbounded,
)
from .error_model import (
    ErrorProfile,
    ErrorRegime,
    e_k_estimate,
    g_k,
    lambda2_estimate,
    phi_functions,
    r_k_true,
    sup_error_for,
    sup_error_measured,
    theorem1_estimate,
    theorem1_preasymptotic,
    theorem2_estimate,
)
from .operators import (
    DenseSPD,
    Diagonal,
    DiagonalPower,
    Laplacian1D,
    OperatorError,
    apply,
    apply_resolvent_form,
    exact_resolvent_spectral,
    operator_error_2norm,
    shifted_solve,
)
from .krylov import (
    KrylovError,
    KrylovState,
    generalized_residual,
    project_resolvent,
    rational_arnoldi,
    rkm_shifts,
    sikm_shifts,
    sym_eig_small,
)

__version__ = "0.1.0"

__all__ = [
    "lambert_w0",
    "log_gamma",
    "JacobiRule",
    "QuadratureError",
    "build_rule",
    "jacobi_eval",
    "jacobi_zeros",
    "PadeForm",
    "build_pade",
    "eval_pade",
    "eval_pade_polyform",
    "eval_pade_zeropole",
    "PoleSearchError",
    "ResolventForm",
    "build_resolvent_form",
    "eval_resolvent",
    "resolvent_defects",
    "Regime",
    "SpectrumBounds",
    "TauChoice",
    "k_bar",
    "phi_k",
    "sigma_k",
    "tau_bounded",
    "tau_reference_bounded",
    "tau_reference_unbounded",
    "tau_switching",
    "tau_unbounded",
    "ErrorProfile",
    "ErrorRegime",
    "e_k_estimate",
    "g_k",
    "lambda2_estimate",
    "phi_functions",
    "r_k_true",
    "sup_error_for",
    "sup_error_measured",
    "theorem1_estimate",
    "theorem1_preasymptotic",
    "theorem2_estimate",
    "DenseSPD",
    "Diagonal",
    "DiagonalPower",
    "Laplacian1D",
    "OperatorError",
    "apply",
    "apply_resolvent_form",
    "exact_resolvent_spectral",
    "operator_error_2norm",
    "shifted_solve",
    "KrylovError",
    "KrylovState",
    "generalized_residual",
    "project_resolvent",
    "rational_arnoldi",
    "rkm_shifts",
    "sikm_shifts",
    "sym_eig_small",
    "__version__",
]
