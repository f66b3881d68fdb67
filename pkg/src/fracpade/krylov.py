"""Rational Arnoldi with prescribed shifts and the projected approximation of
(I + h A^alpha)^-1 v.
"""

from dataclasses import dataclass

import numpy as np

from .operators import shifted_solve

__all__ = [
    "KrylovError",
    "KrylovState",
    "rational_arnoldi",
    "sym_eig_small",
    "project_resolvent",
    "generalized_residual",
    "generalized_residuals",
    "sikm_shifts",
    "rkm_shifts",
]

BREAKDOWN_TOL = 1e-12
MAX_SMALL_DIM = 200


class KrylovError(RuntimeError):
    """Invalid Krylov input or a failed small eigenproblem."""


@dataclass(frozen=True)
class KrylovState:
    """Orthonormal basis V (N x j), projection H = V^T A V and the shifts used.

    ``breakdown`` is set when the subspace became invariant before all shifts
    were consumed; the basis then spans an exact invariant subspace.
    """

    basis: np.ndarray
    projected: np.ndarray
    shifts_used: tuple
    v_norm: float
    op: object
    breakdown: bool = False

    @property
    def dim(self):
        return self.basis.shape[1]


def _orthogonalize(w, cols):
    # modified Gram-Schmidt followed by one full reorthogonalisation pass
    for _ in range(2):
        for q in cols:
            w -= (q @ w) * q
    return w


def rational_arnoldi(op, v, shifts):
    """Orthonormal basis of span{v, (s_1 I + A)^-1 v, ...} built column by column.

    Each new direction is the shifted solve applied to the latest basis
    vector, orthogonalised against all previous columns.
    """
    v = np.asarray(v, dtype=float)
    v_norm = float(np.linalg.norm(v))
    if not v_norm > 0.0:
        raise KrylovError("start vector must be nonzero")
    shifts = [float(s) for s in shifts]
    if any(not s > 0.0 for s in shifts):
        raise KrylovError("shifts must be positive")

    cols = [v / v_norm]
    used = []
    breakdown = False
    for s in shifts:
        w = shifted_solve(op, s, cols[-1])
        w_norm = float(np.linalg.norm(w))
        w = _orthogonalize(w, cols)
        new_norm = float(np.linalg.norm(w))
        if new_norm <= BREAKDOWN_TOL * w_norm:
            breakdown = True
            break
        cols.append(w / new_norm)
        used.append(s)

    basis = np.column_stack(cols)
    av = np.column_stack([op.apply(q) for q in cols])
    h = basis.T @ av
    h = 0.5 * (h + h.T)
    basis.setflags(write=False)
    h.setflags(write=False)
    return KrylovState(basis, h, tuple(used), v_norm, op, breakdown)


def sym_eig_small(h):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a small symmetric matrix."""
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise KrylovError("expected a square matrix")
    if h.shape[0] > MAX_SMALL_DIM:
        raise KrylovError(f"matrix of order {h.shape[0]} exceeds {MAX_SMALL_DIM}")
    try:
        return np.linalg.eigh(0.5 * (h + h.T))
    except np.linalg.LinAlgError as exc:
        raise KrylovError("symmetric eigensolver did not converge") from exc


def _projected_solve(h_mat, h, alpha, rhs):
    # (I + h H^alpha)^-1 rhs by eigendecomposition
    lam, q = sym_eig_small(h_mat)
    if np.any(lam <= 0.0):
        raise KrylovError("projected matrix is not positive definite")
    return q @ ((q.T @ rhs) / (1.0 + h * lam ** alpha))


def project_resolvent(state, h, alpha):
    """omega = V (I + h H^alpha)^-1 V^T v, using V^T v = ||v|| e_1."""
    rhs = np.zeros(state.dim)
    rhs[0] = state.v_norm
    return state.basis @ _projected_solve(state.projected, h, alpha, rhs)


def generalized_residual(state, j, h, alpha):
    """v_{j+1}^T A v_j |e_j^T (I + h H_j^alpha)^-1 V_j^T v| for 1 <= j <= dim.

    H_j is the leading j x j block of the full projection. At j = dim there is
    no next column and 0 is returned.
    """
    if not 1 <= j <= state.dim:
        raise KrylovError(f"step j={j} outside 1..{state.dim}")
    if j == state.dim:
        return 0.0
    rhs = np.zeros(j)
    rhs[0] = state.v_norm
    y = _projected_solve(state.projected[:j, :j], h, alpha, rhs)
    coupling = state.projected[j, j - 1]
    return float(abs(coupling * y[-1]))


def generalized_residuals(state, h, alpha):
    """Generalized residual for every step j = 1..dim."""
    return np.array([generalized_residual(state, j, h, alpha) for j in range(1, state.dim + 1)])


def sikm_shifts(k, h, alpha):
    """k-1 copies of h**(-1/alpha) for the shift-and-invert method."""
    if k < 1:
        raise KrylovError("k must be >= 1")
    return [h ** (-1.0 / alpha)] * (k - 1)


def rkm_shifts(form):
    """The k-1 largest pole magnitudes of a resolvent form, in descending order."""
    return sorted(form.poles_neg, reverse=True)[: form.k - 1]
