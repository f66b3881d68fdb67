"""Self-adjoint positive test operators with shifted solves and exact spectral
resolvents.

Four variants are provided: an explicit diagonal, the diagonal power
diag(1, ..., N)**p, the scaled 1D Dirichlet Laplacian (N+1)^2 tridiag(-1, 2, -1)
and an arbitrary dense SPD matrix.
"""

from dataclasses import dataclass
import math

import numpy as np
import scipy.linalg

from .error_model import r_k_true

__all__ = [
    "OperatorError",
    "Diagonal",
    "DiagonalPower",
    "Laplacian1D",
    "DenseSPD",
    "thomas_solve",
    "apply",
    "shifted_solve",
    "apply_resolvent_form",
    "exact_resolvent_spectral",
    "operator_error_2norm",
    "make_operator",
]


class OperatorError(ValueError):
    """Dimension mismatch, failed solve or an unsupported operator variant."""


def _as_vector(op, v):
    v = np.asarray(v, dtype=float)
    if v.shape != (op.dim,):
        raise OperatorError(f"vector of shape {v.shape} does not match operator dimension {op.dim}")
    return v


def thomas_solve(lower, diag, upper, rhs):
    """Solve a tridiagonal system by forward elimination and back substitution.

    ``lower`` and ``upper`` have length n-1. No pivoting, so the matrix should
    be diagonally dominant or SPD.
    """
    n = len(diag)
    c = np.empty(n - 1)
    d = np.empty(n)
    denom = diag[0]
    if n > 1:
        c[0] = upper[0] / denom
    d[0] = rhs[0] / denom
    for i in range(1, n):
        denom = diag[i] - lower[i - 1] * c[i - 1]
        if denom == 0.0:
            raise OperatorError("zero pivot in tridiagonal elimination")
        if i < n - 1:
            c[i] = upper[i] / denom
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / denom
    x = d
    for i in range(n - 2, -1, -1):
        x[i] -= c[i] * x[i + 1]
    return x


class _Spectral:
    """Mixin for variants with closed-form eigenvalues."""

    has_eigensystem = True

    @property
    def c(self):
        return float(self.eigenvalues()[0])

    @property
    def lambda_max(self):
        return float(self.eigenvalues()[-1])


@dataclass(frozen=True)
class Diagonal(_Spectral):
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 1 or entries.size == 0 or np.any(entries <= 0.0):
            raise OperatorError("diagonal entries must be a nonempty vector of positive reals")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self):
        return self.entries.size

    def eigenvalues(self):
        return np.sort(self.entries)

    def apply(self, v):
        return self.entries * v

    def shifted_solve(self, eta, v):
        return v / (eta + self.entries)

    def dense(self):
        return np.diag(self.entries)

    def exact_resolvent(self, h, alpha, v):
        return v / (1.0 + h * self.entries ** alpha)


@dataclass(frozen=True)
class DiagonalPower(_Spectral):
    """diag(1, 2, ..., n)**p."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise OperatorError("DiagonalPower needs n >= 1 and p >= 1")

    @property
    def dim(self):
        return self.n

    @property
    def entries(self):
        return np.arange(1, self.n + 1, dtype=float) ** self.p

    def eigenvalues(self):
        return self.entries

    def apply(self, v):
        return self.entries * v

    def shifted_solve(self, eta, v):
        return v / (eta + self.entries)

    def dense(self):
        return np.diag(self.entries)

    def exact_resolvent(self, h, alpha, v):
        return v / (1.0 + h * self.entries ** alpha)


@dataclass(frozen=True)
class Laplacian1D(_Spectral):
    """(n+1)^2 tridiag(-1, 2, -1): central differences for -u'' on [0, 1]."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise OperatorError("Laplacian1D needs n >= 1")

    @property
    def dim(self):
        return self.n

    @property
    def scale(self):
        return float((self.n + 1) ** 2)

    def eigenvalues(self):
        j = np.arange(1, self.n + 1)
        return 4.0 * self.scale * np.sin(j * math.pi / (2.0 * (self.n + 1))) ** 2

    def eigenvectors(self):
        """Orthonormal sine eigenvectors as columns, matching ``eigenvalues()``."""
        idx = np.arange(1, self.n + 1)
        return math.sqrt(2.0 / (self.n + 1)) * np.sin(np.outer(idx, idx) * math.pi / (self.n + 1))

    def apply(self, v):
        out = 2.0 * v
        out[:-1] -= v[1:]
        out[1:] -= v[:-1]
        return self.scale * out

    def shifted_solve(self, eta, v):
        n, s = self.n, self.scale
        off = np.full(n - 1, -s)
        diag = np.full(n, 2.0 * s + eta)
        return thomas_solve(off, diag, off, v)

    def dense(self):
        s = self.scale
        return s * (2.0 * np.eye(self.n) - np.eye(self.n, k=1) - np.eye(self.n, k=-1))

    def exact_resolvent(self, h, alpha, v):
        u = self.eigenvectors()
        return u @ ((u.T @ v) / (1.0 + h * self.eigenvalues() ** alpha))


@dataclass(frozen=True)
class DenseSPD:
    matrix: np.ndarray

    has_eigensystem = False

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise OperatorError("DenseSPD needs a square matrix")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(m).max())):
            raise OperatorError("DenseSPD matrix is not symmetric")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def c(self):
        return float(np.linalg.eigvalsh(self.matrix)[0])

    @property
    def lambda_max(self):
        return float(np.linalg.eigvalsh(self.matrix)[-1])

    def apply(self, v):
        return self.matrix @ v

    def shifted_solve(self, eta, v):
        try:
            factor = scipy.linalg.cho_factor(self.matrix + eta * np.eye(self.dim))
        except np.linalg.LinAlgError as exc:
            raise OperatorError(f"shifted matrix is not positive definite (eta={eta})") from exc
        return scipy.linalg.cho_solve(factor, v)

    def dense(self):
        return np.array(self.matrix)


def apply(op, v):
    """A v."""
    return op.apply(_as_vector(op, v))


def shifted_solve(op, eta, v):
    """(eta I + A)^-1 v for eta >= 0."""
    if not eta >= 0.0:
        raise OperatorError(f"shift must be nonnegative, got {eta!r}")
    return op.shifted_solve(float(eta), _as_vector(op, v).copy())


def apply_resolvent_form(form, op, v):
    """sum_j residue_j (pole_j I + A)^-1 v."""
    v = _as_vector(op, v)
    out = np.zeros(op.dim)
    for pole, residue in zip(form.poles_neg, form.residues):
        out += residue * shifted_solve(op, pole, v)
    return out


def exact_resolvent_spectral(op, h, alpha, v):
    """(I + h A^alpha)^-1 v from the closed-form eigensystem."""
    if not getattr(op, "has_eigensystem", False):
        raise OperatorError(f"{type(op).__name__} has no closed-form eigensystem")
    return op.exact_resolvent(h, alpha, _as_vector(op, v))


def operator_error_2norm(form, op):
    """||(I + h A^alpha)^-1 - S(A)||_2 = max_j |r_k(lambda_j)| for self-adjoint A."""
    if not getattr(op, "has_eigensystem", False):
        raise OperatorError(f"{type(op).__name__} has no closed-form eigenvalues")
    return float(np.max(np.abs(r_k_true(op.eigenvalues(), form))))


def make_operator(kind, n=None, p=None, entries=None, matrix=None):
    """Construct an operator from a CLI-style description."""
    if kind == "diag":
        if entries is None:
            raise OperatorError("diag operator needs entries")
        return Diagonal(np.asarray(entries, dtype=float))
    if kind == "diagpow":
        return DiagonalPower(int(n), int(p))
    if kind == "lap1d":
        return Laplacian1D(int(n))
    if kind == "dense":
        if matrix is None:
            raise OperatorError("dense operator needs a matrix")
        return DenseSPD(np.asarray(matrix, dtype=float))
    raise OperatorError(f"unknown operator kind {kind!r}")
