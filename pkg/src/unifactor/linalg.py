"""Dense small-matrix kernel: shears, norms, exponential, unipotency tests.

Everything is scalar-generic: real arrays stay ``float64``, complex arrays
``complex128``, and a single code path serves both. Matrices are plain
numpy arrays in row-major ("acting on column vectors") convention.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotNilpotentPair, BadParameter

__all__ = [
    "as_square",
    "operator_norm",
    "matrix_exp",
    "determinant",
    "numerical_rank",
    "is_unipotent_rank_le",
    "ShearFactor",
    "elementary_shear",
]

#: default tolerance for exact-by-construction identities
NILPOTENCY_TOL = 1e-12


def as_square(M, name="matrix"):
    """Coerce to a finite square float/complex array."""
    A = np.asarray(M)
    if not np.issubdtype(A.dtype, np.inexact):
        A = A.astype(float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise BadParameter(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise BadParameter(f"{name} has non-finite entries")
    return A


def operator_norm(M):
    """Largest singular value (the fiberwise sup norm)."""
    A = as_square(M)
    return float(np.linalg.norm(A, 2))


def matrix_exp(A):
    """Matrix exponential (scaling-and-squaring, via scipy)."""
    A = as_square(A)
    if not np.any(A):
        return np.eye(A.shape[0], dtype=A.dtype)
    return scipy.linalg.expm(A)


def determinant(M):
    """LU-based determinant; returns a python float or complex."""
    A = as_square(M)
    d = np.linalg.det(A)
    return complex(d) if np.iscomplexobj(A) else float(d)


def numerical_rank(M, tol):
    """Rank by singular values with a relative threshold ``tol * s_max``.

    Matrices whose largest singular value is itself below ``tol`` count as
    rank zero (they are numerically the zero matrix).
    """
    A = as_square(M)
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] <= tol:
        return 0
    return int(np.sum(s > tol * s[0]))


def is_unipotent_rank_le(M, r, tol=1e-10):
    """True iff ``(M - I)^2`` vanishes at ``tol`` and rank(M - I) <= r."""
    A = as_square(M)
    N = A - np.eye(A.shape[0], dtype=A.dtype)
    if operator_norm(N @ N) > tol:
        return False
    return numerical_rank(N, tol) <= r


@dataclass(frozen=True)
class ShearFactor:
    """Elementary factor ``u -> u + alpha(u) * v`` with ``alpha(v) = 0``.

    ``alpha`` is stored as a plain (bilinear) covector: ``alpha(u)`` is the
    unconjugated dot product, also in the complex case. The matrix form is
    ``I + outer(v, alpha)`` which is unipotent of rank <= 1 exactly because
    alpha annihilates v.
    """

    v: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", np.atleast_1d(np.asarray(self.v)))
        object.__setattr__(self, "alpha", np.atleast_1d(np.asarray(self.alpha)))
        if self.v.shape != self.alpha.shape or self.v.ndim != 1:
            raise BadParameter("v and alpha must be vectors of equal length")

    @property
    def dim(self):
        return self.v.shape[0]

    def matrix(self):
        k = self.dim
        dtype = np.result_type(self.v.dtype, self.alpha.dtype, float)
        return np.eye(k, dtype=dtype) + np.outer(self.v, self.alpha)

    def inverse(self):
        """The inverse shear negates the functional."""
        return ShearFactor(self.v, -self.alpha)

    def apply(self, u):
        u = np.asarray(u)
        return u + self.v * np.dot(self.alpha, u)

    def magnitude(self):
        """Operator-norm size of (E - I)."""
        return float(np.linalg.norm(self.v) * np.linalg.norm(self.alpha))


def elementary_shear(v, alpha, tol=NILPOTENCY_TOL):
    """Build a :class:`ShearFactor`, correcting ``alpha`` so alpha(v) = 0.

    The correction subtracts the component of alpha along the metric dual
    of v; inputs whose defect exceeds ``tol`` relative to |alpha||v| are
    rejected instead of silently bent into shape.
    """
    v = np.atleast_1d(np.asarray(v))
    alpha = np.atleast_1d(np.asarray(alpha))
    if v.shape != alpha.shape or v.ndim != 1:
        raise BadParameter("v and alpha must be vectors of equal length")
    if not (np.all(np.isfinite(v)) and np.all(np.isfinite(alpha))):
        raise BadParameter("non-finite shear data")
    scale = np.linalg.norm(v) * np.linalg.norm(alpha)
    if scale == 0.0:
        return ShearFactor(v, np.zeros_like(alpha))
    defect = np.dot(alpha, v)
    if abs(defect) > tol * scale:
        raise NotNilpotentPair(
            f"alpha(v) = {defect:.3e} exceeds {tol:.1e} * |alpha||v|"
        )
    vv = np.vdot(v, v).real
    corrected = alpha - (defect / vv) * np.conj(v)
    return ShearFactor(v, corrected)
