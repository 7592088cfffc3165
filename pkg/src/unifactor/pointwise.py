"""Single-matrix factorization: near-identity Gauss-Jordan, Gram-Schmidt
reduction, and diagonal dissolution into elementary shears.

Conventions
-----------
Factor lists are stored in *application order*: ``factors[0]`` acts first,
so the composed matrix is ``factors[-1] @ ... @ factors[0]``. A
:class:`PointFactorization` promises ``compose(factors) @ input = residual``.

The Gauss-Jordan path is pivot-free: every shear parameter is an explicit
rational function of the entries of the input, vanishing at the identity.
Whenever a pivot leaves the safe region the routine raises
:class:`~unifactor.errors.NotNearIdentity` instead of permuting rows, which
would break continuity of the factor map.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadParameter,
    IllConditioned,
    NotNearIdentity,
    NotSpecial,
    SingularDiagonal,
)
from .linalg import ShearFactor, as_square, determinant

__all__ = [
    "PointFactorization",
    "compose_factors",
    "gauss_jordan_near_identity",
    "gram_schmidt_reduce",
    "diagonal_to_elementary",
]

PIVOT_MIN = 0.5
DET_TOL = 1e-10
ORTH_TOL = 1e-10
COND_MAX = 1e8


@dataclass
class PointFactorization:
    """Ordered factors (application order) and the residual they leave."""

    factors: list = field(default_factory=list)
    residual: np.ndarray | None = None

    def compose(self, dim=None, dtype=float):
        if not self.factors:
            if dim is None and self.residual is not None:
                dim = self.residual.shape[0]
            return np.eye(dim, dtype=dtype)
        return compose_factors(self.factors)


def compose_factors(factors):
    """Product ``F_N @ ... @ F_1`` of factors given in application order."""
    if not factors:
        raise BadParameter("cannot compose an empty factor list without a dim")
    M = factors[0].matrix()
    for F in factors[1:]:
        M = F.matrix() @ M
    return M


# ---------------------------------------------------------------------------
# shear triples for 2x2 diagonal blocks
# ---------------------------------------------------------------------------

def _triple_params(lam):
    """Parameters (s, t, r) with
    ``(I + s*Na)(I + t*Nb)(I + r*Na) = diag(lam, 1/lam)``
    where ``Na = (e_p+e_q)(e_p-e_q)^T`` and ``Nb = (e_p-e_q)(e_p+e_q)^T``.

    All three are rational in lam and vanish at lam = 1, so a factorization
    built from them is continuous through the identity.
    """
    if abs(lam) < 0.25 or abs(lam + 1.0) < 0.5:
        raise NotNearIdentity(f"diagonal pivot {lam!r} outside the safe region")
    s = (lam - 1.0) / (2.0 * (lam + 1.0))
    t = 2.0 * s / (1.0 - 4.0 * s * s)
    r = (t - s + 2.0 * s * t) / (1.0 + 2.0 * t + 4.0 * s * t)
    return s, t, r


def _basis(k, i, dtype):
    e = np.zeros(k, dtype=dtype)
    e[i] = 1.0
    return e


def diag_block_shears(lam, p, q, k, dtype):
    """Application-order shears composing to diag(lam @ p, 1/lam @ q).

    Always returns three slots (zero shears when lam == 1) so that callers
    building factor *fields* keep a fixed slot structure.
    """
    dtype = np.result_type(dtype, type(lam))
    ep, eq = _basis(k, p, dtype), _basis(k, q, dtype)
    va, aa = ep + eq, ep - eq
    if lam == 1.0:
        z = np.zeros(k, dtype=dtype)
        return [ShearFactor(z, aa), ShearFactor(z, va), ShearFactor(z, aa)]
    s, t, r = _triple_params(lam)
    return [
        ShearFactor(r * va, aa),
        ShearFactor(t * aa, va),
        ShearFactor(s * va, aa),
    ]


def _whitehead_params(lam, vanishing):
    """Four coordinate-shear parameters (a, b, c, d) with
    ``(I + a E_pq)(I + b E_qp)(I + c E_pq)(I + d E_qp) = diag(lam, 1/lam)``.

    ``vanishing=False`` is the classical choice a = 1 (used by the public
    diagonal dissolution, which does not promise continuity at I);
    ``vanishing=True`` uses a = sqrt(|lam - 1|), making every parameter tend
    to zero as lam -> 1 at the cost of a square-root modulus.
    """
    if lam == 0:
        raise SingularDiagonal("zero diagonal entry")
    a = np.sqrt(abs(lam - 1.0)) if vanishing else 1.0
    if a == 0.0:
        return 0.0, 0.0, 0.0, 0.0
    b = (lam - 1.0) / a
    c = -a / lam
    d = -lam * b
    return a, b, c, d


def _coordinate_shear(k, i, j, value, dtype):
    v = np.zeros(k, dtype=dtype)
    v[i] = value
    return ShearFactor(v, _basis(k, j, dtype))


def whitehead_block_shears(lam, p, q, k, dtype, vanishing=False):
    """Application-order single-entry shears composing to diag(lam@p, 1/lam@q)."""
    dtype = np.result_type(dtype, type(lam))
    if lam == 1.0:
        return []
    a, b, c, d = _whitehead_params(lam, vanishing)
    # compose = Ea @ Eb @ Ec @ Ed, hence application order [Ed, Ec, Eb, Ea]
    return [
        _coordinate_shear(k, q, p, d, dtype),
        _coordinate_shear(k, p, q, c, dtype),
        _coordinate_shear(k, q, p, b, dtype),
        _coordinate_shear(k, p, q, a, dtype),
    ]


# ---------------------------------------------------------------------------
# Gauss-Jordan
# ---------------------------------------------------------------------------

def _column_clears(M, pivot_min, mode, prune):
    """Clear all off-diagonal entries column by column with left shears.

    Returns (factors, diag) where diag is the resulting diagonal. ``M`` is
    consumed. In ``coordinate`` mode each rank-one clear is expanded into
    single-entry shears (they commute exactly, sharing one column index).
    """
    k = M.shape[0]
    dtype = M.dtype
    factors = []
    for j in range(k):
        c = M[:, j]
        pivot = c[j]
        if abs(pivot) < pivot_min:
            raise NotNearIdentity(
                f"pivot {pivot!r} in column {j} below {pivot_min}"
            )
        v = -c / pivot
        v[j] = 0.0
        nonzero = np.nonzero(v)[0]
        if mode == "coordinate":
            idx = nonzero if prune else [i for i in range(k) if i != j]
            for i in idx:
                factors.append(_coordinate_shear(k, i, j, v[i], dtype))
        elif nonzero.size or not prune:
            factors.append(ShearFactor(v.copy(), _basis(k, j, dtype)))
        if nonzero.size:
            M += np.outer(v, M[j, :])
            M[nonzero, j] = 0.0  # exact by construction
    return factors, np.diagonal(M).copy()


def _dissolve_inverse_diag(d, k, dtype, mode, prune, vanishing=False):
    """Factors composing to diag(1/d_0, ..., 1/d_{k-2}, prod_{i<k-1} d_i).

    Applied after the clears this sends diag(d) to diag(1, ..., 1, det),
    leaving the determinant in the last slot. The caller decides whether
    that leftover is negligible (det-one inputs) or needs its own factor.
    """
    blocks = []
    g = 1.0 / np.asarray(d)
    mu = 1.0
    for i in range(k - 1):
        mu = mu * g[i]
        lam = mu
        if mode == "coordinate":
            fs = whitehead_block_shears(lam, i, i + 1, k, dtype, vanishing=vanishing)
        else:
            fs = diag_block_shears(lam, i, i + 1, k, dtype)
            if prune and lam == 1.0:
                fs = []
        blocks.append(fs)
    factors = []
    for fs in reversed(blocks):  # so compose = D_1 @ D_2 @ ... @ D_{k-1}
        factors.extend(fs)
    return factors


def _gauss_jordan_core(S, pivot_min=PIVOT_MIN, mode="general", prune=True):
    """Reduce S to diag(1, ..., 1, det S); factors in application order.

    Returns (factors, delta) with ``compose(factors) @ S = diag(1,..,1,delta)``
    up to roundoff, where delta = det(S) exactly in exact arithmetic.
    """
    M = S.copy()
    k = M.shape[0]
    factors, d = _column_clears(M, pivot_min, mode, prune)
    vanishing = mode == "coordinate"
    factors += _dissolve_inverse_diag(d, k, M.dtype, mode, prune, vanishing)
    delta = np.prod(d)
    return factors, delta


def gauss_jordan_near_identity(S, det_tol=DET_TOL, pivot_min=PIVOT_MIN,
                               mode="general"):
    """Factor a det-one matrix near I into shears annihilating it.

    Returns a :class:`PointFactorization` with residual I and
    ``compose(factors) @ S = I``. Parameters are rational in the entries of
    S and vanish at S = I; the factor list for S = I is empty. Raises
    :class:`NotNearIdentity` when a pivot guard fires and
    :class:`NotSpecial` when det(S) is off one.
    """
    S = as_square(S)
    if abs(determinant(S) - 1.0) > det_tol:
        raise NotSpecial(f"det = {determinant(S)!r}, expected 1")
    factors, _ = _gauss_jordan_core(S, pivot_min=pivot_min, mode=mode)
    return PointFactorization(factors, np.eye(S.shape[0], dtype=S.dtype))


# ---------------------------------------------------------------------------
# Gram-Schmidt
# ---------------------------------------------------------------------------

def _row_mgs(S):
    """Bottom-up modified Gram-Schmidt on rows, with re-orthogonalization.

    Returns (U, Q) with S = U @ Q, U upper triangular with positive real
    diagonal and Q having orthonormal rows. Working bottom-up keeps unit
    upper-triangular inputs fixed (their residual is exactly I).
    """
    k = S.shape[0]
    dtype = np.result_type(S.dtype, float)
    Q = np.zeros((k, k), dtype=dtype)
    U = np.zeros((k, k), dtype=dtype)
    for i in range(k - 1, -1, -1):
        w = S[i].astype(dtype, copy=True)
        for _ in range(2):  # twice is enough
            for l in range(k - 1, i, -1):
                c = np.vdot(Q[l], w)
                w -= c * Q[l]
                U[i, l] += c
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            raise IllConditioned("rank-deficient input in Gram-Schmidt")
        U[i, i] = nrm
        Q[i] = w / nrm
    return U, Q


def _gram_schmidt_core(S, mode="general", prune=True, require_special=True,
                       det_tol=DET_TOL):
    """Shared Gram-Schmidt reduction; no orthogonality short circuit.

    Slot structure is fixed: k-1 diagonal blocks followed by k-1 column
    shears of the unit-triangular part, so factor fields built pointwise
    from this routine have position-independent shape.
    """
    k = S.shape[0]
    U, Q = _row_mgs(S)
    diag = np.diagonal(U).real
    if require_special:
        # det S = 1 forces prod(diag) = 1 and det Q = 1
        prod = float(np.prod(diag))
        if abs(prod - 1.0) > max(det_tol * 10, 1e-8):
            raise NotSpecial(f"triangular diagonal product {prod} far from 1")
    # U^{-1} = N @ D with N unit upper triangular, D = diag(1/diag)
    N = np.linalg.solve(U, np.diag(diag.astype(U.dtype)))
    vanishing = mode == "coordinate"
    factors = _dissolve_inverse_diag(diag, k, U.dtype, mode, prune, vanishing)
    for j in range(1, k):
        n = N[:, j].copy()
        n[j:] = 0.0
        if mode == "coordinate":
            idx = np.nonzero(n)[0] if prune else range(j)
            for i in idx:
                factors.append(_coordinate_shear(k, i, j, n[i], U.dtype))
        else:
            if prune and not np.any(n):
                continue
            factors.append(ShearFactor(n, _basis(k, j, U.dtype)))
    return factors, Q


def gram_schmidt_reduce(S, det_tol=DET_TOL, orth_tol=ORTH_TOL,
                        cond_max=COND_MAX, mode="general"):
    """Reduce a det-one matrix to its orthogonal/unitary part by shears.

    ``compose(factors) @ S = Q`` with Q orthogonal (real) or unitary
    (complex) and det Q = 1. Orthogonal/unitary inputs are returned
    untouched with an empty factor list (the exact fixed point of the
    reduction). Factors vary continuously with S away from that branch.
    """
    S = as_square(S)
    k = S.shape[0]
    if operator_residual_orth(S) <= orth_tol:
        return PointFactorization([], S)
    if abs(determinant(S) - 1.0) > det_tol:
        raise NotSpecial(f"det = {determinant(S)!r}, expected 1")
    cond = np.linalg.cond(S, 2)
    if not np.isfinite(cond) or cond > cond_max:
        raise IllConditioned(f"condition number {cond:.3e} exceeds {cond_max:.1e}")
    factors, Q = _gram_schmidt_core(S, mode=mode)
    return PointFactorization(factors, Q)


def operator_residual_orth(M):
    """Operator-norm distance of M*M from the identity."""
    k = M.shape[0]
    return float(np.linalg.norm(M.conj().T @ M - np.eye(k), 2))


# ---------------------------------------------------------------------------
# diagonal dissolution (Whitehead blocks)
# ---------------------------------------------------------------------------

def diagonal_to_elementary(D, det_tol=DET_TOL, singular_tol=1e-12):
    """Write a det-one diagonal matrix as <= 4(k-1) single-entry shears.

    Classical Whitehead 2x2 blocks: diag(lam, 1/lam) as four coordinate
    shears with leading parameter 1. The identity yields an empty list;
    no continuity at I is promised (the parameter 1 does not vanish).
    """
    D = as_square(D)
    k = D.shape[0]
    d = np.diagonal(D).copy()
    off = D - np.diag(d)
    if np.any(np.abs(off) > 1e-13 * max(1.0, np.max(np.abs(d)))):
        raise BadParameter("input is not diagonal")
    if np.any(np.abs(d) < singular_tol):
        raise SingularDiagonal("diagonal entry below 1e-12 in modulus")
    if abs(determinant(np.diag(d)) - 1.0) > det_tol:
        raise NotSpecial("diagonal determinant is not 1")
    blocks = []
    mu = 1.0
    for i in range(k - 1):
        mu = mu * d[i]
        blocks.append(whitehead_block_shears(mu, i, i + 1, k, D.dtype))
    factors = []
    for fs in reversed(blocks):  # compose = B_1 @ ... @ B_{k-1} = D
        factors.extend(fs)
    return factors
