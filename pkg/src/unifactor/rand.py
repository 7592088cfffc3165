"""Seeded generators for structured random matrices (tests, demos, CLI)."""
from __future__ import annotations

import numpy as np

from .symplectic import standard_omega

__all__ = [
    "random_traceless",
    "random_special",
    "random_special_orthogonal",
    "random_skew",
    "random_symplectic_algebra",
    "random_symplectic",
    "random_compact_symplectic",
]


def _gaussian(rng, shape, complex_scalars):
    A = rng.standard_normal(shape)
    if complex_scalars:
        A = A + 1j * rng.standard_normal(shape)
    return A


def random_traceless(rng, k, complex_scalars=False):
    A = _gaussian(rng, (k, k), complex_scalars)
    return A - np.trace(A) / k * np.eye(k, dtype=A.dtype)


def random_special(rng, k, scale=0.1, complex_scalars=False):
    """exp of a scaled traceless matrix: determinant-one, near I for small scale."""
    import scipy.linalg

    A = random_traceless(rng, k, complex_scalars)
    A *= scale / max(np.linalg.norm(A, 2), 1e-300)
    return scipy.linalg.expm(A)


def random_skew(rng, k, complex_scalars=False):
    """Skew-symmetric (real) or skew-Hermitian traceless (complex)."""
    A = _gaussian(rng, (k, k), complex_scalars)
    if complex_scalars:
        A = (A - A.conj().T) / 2
        A -= np.trace(A) / k * np.eye(k, dtype=A.dtype)
    else:
        A = (A - A.T) / 2
    return A


def random_special_orthogonal(rng, k, complex_scalars=False):
    """Haar-ish special orthogonal/unitary matrix via QR with phase fix."""
    A = _gaussian(rng, (k, k), complex_scalars)
    Q, R = np.linalg.qr(A)
    Q = Q * (np.diagonal(R) / np.abs(np.diagonal(R)))
    d = np.linalg.det(Q)
    Q[:, 0] = Q[:, 0] / d
    return Q


def random_symplectic_algebra(rng, half_dim, complex_scalars=False):
    """Element H of the symplectic Lie algebra: Omega H + H^T Omega = 0."""
    k = half_dim
    A = _gaussian(rng, (k, k), complex_scalars)
    B = _gaussian(rng, (k, k), complex_scalars)
    C = _gaussian(rng, (k, k), complex_scalars)
    B = (B + B.T) / 2
    C = (C + C.T) / 2
    top = np.hstack([A, B])
    bottom = np.hstack([C, -A.T])
    return np.vstack([top, bottom])


def random_symplectic(rng, half_dim, scale=0.1, complex_scalars=False):
    import scipy.linalg

    H = random_symplectic_algebra(rng, half_dim, complex_scalars)
    H *= scale / max(np.linalg.norm(H, 2), 1e-300)
    return scipy.linalg.expm(H)


def random_compact_symplectic(rng, half_dim, complex_scalars=False):
    """Random element of Sp cap O (real) or Sp cap U (complex).

    Real case: embeds U(k) as [[X, -Y], [Y, X]]. Complex case: exponentiates
    an element of sp(2k, C) cap u(2k), which has the block form
    [[A, B], [-conj(B), conj(A)]] with A anti-Hermitian and B symmetric.
    """
    import scipy.linalg

    k = half_dim
    if not complex_scalars:
        Z = random_special_orthogonal(rng, k, complex_scalars=True)
        X, Y = Z.real, Z.imag
        return np.block([[X, -Y], [Y, X]])
    A = _gaussian(rng, (k, k), True)
    A = (A - A.conj().T) / 2
    B = _gaussian(rng, (k, k), True)
    B = (B + B.T) / 2
    H = np.block([[A, B], [-B.conj(), A.conj()]])
    M = scipy.linalg.expm(H)
    # guard: numerical drift off the group is re-verified by callers
    assert np.allclose(M.conj().T @ M, np.eye(2 * k), atol=1e-10)
    Om = standard_omega(k)
    assert np.allclose(M.T @ Om @ M, Om, atol=1e-10)
    return M
