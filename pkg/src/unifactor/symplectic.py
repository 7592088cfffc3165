"""Symplectic linear algebra: the standard form, transvection factors, and
symplectic versions of the Gram-Schmidt and Gauss-Jordan reductions.

The standard form on dimension 2k is Omega = [[0, I], [-I, 0]] and
omega(u, v) = u^T Omega v, *bilinear* also over the complex field. The
compact subgroup is Sp cap O (real) / Sp cap U (complex); membership is
tested by the pair of residuals, matching how the group is defined.

Factor lists follow the application-order convention of
:mod:`unifactor.pointwise`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameter,
    IllConditioned,
    NotIsotropicPair,
    NotNearIdentity,
    NotSymplectic,
    OddDimension,
)
from .linalg import ShearFactor, as_square
from .pointwise import (
    PointFactorization,
    _gauss_jordan_core,
    _triple_params,
    _basis,
)

__all__ = [
    "standard_omega",
    "omega_product",
    "TransvectionFactor",
    "transvection",
    "is_symplectic",
    "compact_residuals",
    "symplectic_gram_schmidt_reduce",
    "symplectic_gauss_jordan_near_identity",
]

ISOTROPY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-8


def standard_omega(half_dim, dtype=float):
    k = half_dim
    Om = np.zeros((2 * k, 2 * k), dtype=dtype)
    Om[:k, k:] = np.eye(k, dtype=dtype)
    Om[k:, :k] = -np.eye(k, dtype=dtype)
    return Om


def omega_product(u, v):
    """Bilinear symplectic pairing u^T Omega v."""
    u = np.asarray(u)
    v = np.asarray(v)
    k = u.shape[0] // 2
    return np.dot(u[:k], v[k:]) - np.dot(u[k:], v[:k])


def _omega_apply(v):
    """Omega @ v without forming Omega."""
    k = v.shape[0] // 2
    return np.concatenate([v[k:], -v[:k]])


@dataclass(frozen=True)
class TransvectionFactor:
    """Symplectic unipotent factor u -> u + w(u, v) w + w(u, w) v.

    Requires omega(v, w) = 0; then the matrix form
    ``I + outer(w, Omega v) + outer(v, Omega w)`` squares to the identity
    minus nothing: (E - I)^2 = 0 exactly, rank(E - I) <= 2, and E
    preserves the standard form.
    """

    v: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", np.atleast_1d(np.asarray(self.v)))
        object.__setattr__(self, "w", np.atleast_1d(np.asarray(self.w)))
        if self.v.shape != self.w.shape or self.v.ndim != 1:
            raise BadParameter("v and w must be vectors of equal length")
        if self.v.shape[0] % 2:
            raise OddDimension("transvections live in even dimension")

    @property
    def dim(self):
        return self.v.shape[0]

    def matrix(self):
        dtype = np.result_type(self.v.dtype, self.w.dtype, float)
        E = np.eye(self.dim, dtype=dtype)
        E += np.outer(self.w, _omega_apply(self.v))
        E += np.outer(self.v, _omega_apply(self.w))
        return E

    def inverse(self):
        return TransvectionFactor(self.v, -self.w)

    def magnitude(self):
        return 2.0 * float(np.linalg.norm(self.v) * np.linalg.norm(self.w))

    def lagrangian_split(self):
        """0 or 1 if both v, w lie in L_1 (first k) resp. L_2; else None."""
        k = self.dim // 2
        if self.magnitude() == 0.0:
            return -1  # identity factor, compatible with either side
        v_top = np.any(self.v[k:] != 0) or np.any(self.w[k:] != 0)
        v_bot = np.any(self.v[:k] != 0) or np.any(self.w[:k] != 0)
        if not v_top:
            return 0
        if not v_bot:
            return 1
        return None


def transvection(v, w, tol=ISOTROPY_TOL):
    """Build a :class:`TransvectionFactor`, correcting omega(v, w) to zero.

    The correction moves w along -Omega conj(v), the direction whose pairing
    with v is exactly |v|^2, so the corrected pair is isotropic to machine
    precision. Pairs with a relative defect above ``tol`` are rejected.
    """
    v = np.atleast_1d(np.asarray(v))
    w = np.atleast_1d(np.asarray(w))
    if v.shape != w.shape or v.ndim != 1 or v.shape[0] % 2:
        raise BadParameter("v, w must be equal-length even-dimensional vectors")
    scale = np.linalg.norm(v) * np.linalg.norm(w)
    if scale == 0.0:
        return TransvectionFactor(v, w)
    defect = omega_product(v, w)
    if abs(defect) > tol * scale:
        raise NotIsotropicPair(
            f"omega(v, w) = {defect:.3e} exceeds {tol:.1e} * |v||w|"
        )
    z = -_omega_apply(np.conj(v)) / np.vdot(v, v).real
    return TransvectionFactor(v, w - defect * z)


def is_symplectic(M, tol=SYMPLECTIC_TOL):
    """True iff ``M^T Omega M = Omega`` within ``tol`` (operator norm)."""
    A = as_square(M)
    if A.shape[0] % 2:
        raise OddDimension("symplectic matrices have even dimension")
    Om = standard_omega(A.shape[0] // 2)
    return float(np.linalg.norm(A.T @ Om @ A - Om, 2)) <= tol


def compact_residuals(M):
    """(unitarity residual, symplecticity residual) for compact membership."""
    A = as_square(M)
    n = A.shape[0]
    Om = standard_omega(n // 2)
    r_u = float(np.linalg.norm(A.conj().T @ A - np.eye(n), 2))
    r_s = float(np.linalg.norm(A.T @ Om @ A - Om, 2))
    return r_u, r_s


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def _plane_rank1(v, coeff):
    """Rank-one transvection u -> u + coeff * omega(u, v) v."""
    return TransvectionFactor(v, (coeff / 2.0) * v)


def symplectic_diag_pair(lam, p, half_dim, dtype):
    """Three in-plane transvections composing to diag(lam @ p, 1/lam @ p+k).

    The plane (e_p, e_{p+k}) is an omega-pair, where every SL(2) shear is a
    rank-one transvection; the rational (s, t, r) triple from the pointwise
    module therefore transfers verbatim.
    """
    k = half_dim
    n = 2 * k
    dtype = np.result_type(dtype, type(lam))
    ep, eq = _basis(n, p, dtype), _basis(n, p + k, dtype)
    va, vb = ep + eq, ep - eq
    if lam == 1.0:
        z = np.zeros(n, dtype=dtype)
        return [TransvectionFactor(va, z), TransvectionFactor(vb, z),
                TransvectionFactor(va, z)]
    s, t, r = _triple_params(lam)
    # I + s*Na = I + s v_a (Omega v_a)^T since Omega v_a = e_p - e_{p+k}
    return [_plane_rank1(va, r), _plane_rank1(vb, -t), _plane_rank1(va, s)]


def _sym_block_pieces(Z, half_dim, lower, dtype, prune=True):
    """Transvections composing to [[I, Z], [0, I]] (upper) or
    [[I, 0], [Z, I]] (lower) for symmetric k x k Z. The pieces commute, so
    the list order is immaterial; one piece per entry i <= j.
    """
    k = half_dim
    n = 2 * k
    out = []
    for i in range(k):
        for j in range(i, k):
            z = Z[i, j]
            if prune and z == 0.0:
                continue
            if lower:
                v = _basis(n, k + i, dtype)
                coeff = z / 2.0 if i == j else z
                w = coeff * _basis(n, k + j, dtype)
            else:
                v = _basis(n, i, dtype)
                coeff = -z / 2.0 if i == j else -z
                w = coeff * _basis(n, j, dtype)
            out.append(TransvectionFactor(v, w))
    return out


def _lift_shear_cross(shear: ShearFactor, half_dim):
    """blockdiag(E, E^{-T}) of a k-dim shear as a single transvection.

    With E = I + v alpha^T the lift is the transvection with
    v_t = (0, alpha), w_t = (v, 0); omega(v_t, w_t) = -alpha(v) = 0.
    """
    k = half_dim
    dtype = np.result_type(shear.v.dtype, shear.alpha.dtype, float)
    v_t = np.concatenate([np.zeros(k, dtype=dtype), shear.alpha.astype(dtype)])
    w_t = np.concatenate([shear.v.astype(dtype), np.zeros(k, dtype=dtype)])
    return TransvectionFactor(v_t, w_t)


def _bilinear_unit(x):
    """x / sqrt(x^T x); None if the bilinear square is degenerate."""
    q = np.dot(x, x)
    if abs(q) < 1e-12 * float(np.vdot(x, x).real):
        return None, None
    root = np.sqrt(q.astype(complex)) if np.iscomplexobj(x) else np.sqrt(q)
    return x / root, root


def _same_l_blocks(v, alpha):
    """Symmetric blocks (P, Q, S, T) with
    ``[[I,P],[0,I]] [[I,0],[Q,I]] [[I,S],[0,I]] [[I,0],[T,I]]
       = blockdiag(I + v alpha^T, (I + v alpha^T)^{-T})``.

    All four vanish like sqrt(|v||alpha|) near the identity, so
    Lagrangian-respecting factor fields stay continuous through fixed
    points. Returns None when the complex bilinear norms degenerate.
    """
    k = v.shape[0]
    dtype = np.result_type(v.dtype, alpha.dtype, float)
    if not np.any(v) or not np.any(alpha):
        Zk = np.zeros((k, k), dtype=dtype)
        return Zk, Zk.copy(), Zk.copy(), Zk.copy()
    vh, nv = _bilinear_unit(v.astype(dtype))
    ah, na = _bilinear_unit(alpha.astype(dtype))
    if vh is None or ah is None:
        return None
    m = nv * na
    s = np.sqrt(m.astype(complex)) if np.iscomplexobj(np.asarray(m)) else np.sqrt(m)
    Pi = np.eye(k, dtype=np.result_type(dtype, type(s))) \
        - np.outer(vh, vh) - np.outer(ah, ah)
    G = np.outer(vh, ah) + np.outer(ah, vh) + Pi
    P = s * np.outer(vh, vh)
    Q = s * G
    S = -P
    T = -s * (G + m * np.outer(ah, ah))
    return P, Q, S, T


def _lift_shear_same_l(shear: ShearFactor, half_dim, prune=True):
    """blockdiag(E, E^{-T}) as Lagrangian-respecting transvections, or None."""
    blocks = _same_l_blocks(shear.v, shear.alpha)
    if blocks is None:
        return None
    P, Q, S, T = blocks
    dtype = P.dtype
    out = []
    # compose = upper(P) lower(Q) upper(S) lower(T): application order reversed
    out += _sym_block_pieces(T, half_dim, lower=True, dtype=dtype, prune=prune)
    out += _sym_block_pieces(S, half_dim, lower=False, dtype=dtype, prune=prune)
    out += _sym_block_pieces(Q, half_dim, lower=True, dtype=dtype, prune=prune)
    out += _sym_block_pieces(P, half_dim, lower=False, dtype=dtype, prune=prune)
    return out


def _same_l_det_leftover(delta, half_dim, dtype, prune=True):
    """Same-Lagrangian factors composing to
    blockdiag(diag(1,..,1/delta), diag(1,..,delta)) (inverse of the
    determinant leftover sitting in the last omega-pair).

    Blocks P = p E_cc, Q = q E_cc with pq = 1/delta - 1, S = -delta*P,
    T = -Q/delta satisfy the four-factor identity; p, q scale like the
    square root of the defect, so they vanish continuously at delta = 1.
    """
    k = half_dim
    n = 2 * k
    c = k - 1
    lam = 1.0 / delta - 1.0
    dtype = np.result_type(dtype, type(lam))
    ec = _basis(n, c, dtype)
    ekc = _basis(n, k + c, dtype)
    if lam == 0.0:
        if prune:
            return []
        z = np.zeros(n, dtype=dtype)
        return [TransvectionFactor(ekc, z), TransvectionFactor(ec, z),
                TransvectionFactor(ekc, z), TransvectionFactor(ec, z)]
    p = np.sqrt(abs(lam))
    q = lam / p
    s_blk = -p * delta
    t_blk = -q / delta
    # application order [T, S, Q, P]; T, Q live in L2, S, P in L1
    return [
        TransvectionFactor(ekc, (t_blk / 2.0) * ekc),
        TransvectionFactor(ec, (-s_blk / 2.0) * ec),
        TransvectionFactor(ekc, (q / 2.0) * ekc),
        TransvectionFactor(ec, (-p / 2.0) * ec),
    ]


# ---------------------------------------------------------------------------
# Gram-Schmidt (reduction to the compact subgroup)
# ---------------------------------------------------------------------------

def _upper_cholesky(P):
    """Upper-triangular C with C C* = P and positive real diagonal."""
    n = P.shape[0]
    J = np.eye(n)[::-1]
    L = np.linalg.cholesky(J @ P @ J)
    return J @ L @ J


def _symplectic_borel(P, half_dim):
    """Borel factor B of the Gram matrix: B B* = P, B = [[R, X], [0, R^-T]].

    The symplectic Borel subgroup is triangular in the flag ordering
    (e_1..e_k, e_2k..e_{k+1}), not the standard one, so the triangular
    Cholesky factor is taken in permuted coordinates. Uniqueness of
    Cholesky plus the symplectic Iwasawa decomposition make the result
    symplectic whenever P is.
    """
    k = half_dim
    n = 2 * k
    perm = np.concatenate([np.arange(k), np.arange(n - 1, k - 1, -1)])
    C = _upper_cholesky(P[np.ix_(perm, perm)])
    B = np.zeros_like(C)
    B[np.ix_(perm, perm)] = C
    return B


def _borel_inverse_factors(B, half_dim, prune=True):
    """Transvections composing to B^{-1} for Borel B = [[R, X], [0, R^{-T}]].

    B^{-1} = blockdiag(R^{-1}, R^T) @ [[I, Z], [0, I]] with Z = -X R^T
    symmetric; the block-diagonal part splits into a unit-triangular lift
    plus in-plane diagonal pairs.
    """
    k = half_dim
    dtype = B.dtype
    R = B[:k, :k]
    X = B[:k, k:]
    Z = -X @ R.T
    Z = (Z + Z.T) / 2.0
    factors = _sym_block_pieces(Z, k, lower=False, dtype=dtype, prune=prune)
    A = np.linalg.inv(R)  # upper triangular, positive diagonal
    dA = np.diagonal(A).real.copy()
    Ntil = A @ np.diag(1.0 / dA.astype(dtype))
    # diag pairs first (application order), then the unit-triangular lift
    pair_factors = []
    for i in range(k - 1, -1, -1):
        lam = float(dA[i])
        fs = symplectic_diag_pair(lam, i, k, dtype)
        if prune and lam == 1.0:
            fs = []
        pair_factors.extend(fs)
    factors += pair_factors
    for j in range(1, k):
        n_col = Ntil[:, j].copy()
        n_col[j:] = 0.0
        if prune and not np.any(n_col):
            continue
        factors.append(_lift_shear_cross(ShearFactor(n_col, _basis(k, j, dtype)),
                                         k))
    return factors


def _symplectic_gs_core(S, prune=True):
    P = S @ S.conj().T
    B = _symplectic_borel(P, S.shape[0] // 2)
    K = np.linalg.solve(B, S)
    factors = _borel_inverse_factors(B, S.shape[0] // 2, prune=prune)
    return factors, K


def symplectic_gram_schmidt_reduce(S, tol=SYMPLECTIC_TOL, cond_max=1e8,
                                   compact_tol=SYMPLECTIC_TOL):
    """Reduce a symplectic matrix to the compact subgroup by transvections.

    ``compose(factors) @ S`` lands in Sp cap U (complex) / Sp cap O (real).
    Inputs already in the compact subgroup come back unchanged with an
    empty factor list. The reduction computes the symplectic Iwasawa
    (Borel) factor as the triangular Cholesky factor of S S*, which is
    symplectic by uniqueness, then dissolves its inverse.
    """
    S = as_square(S)
    if S.shape[0] % 2:
        raise OddDimension("even dimension required")
    if not is_symplectic(S, tol):
        raise NotSymplectic("input does not preserve the standard form")
    r_u, r_s = compact_residuals(S)
    if max(r_u, r_s) <= compact_tol:
        return PointFactorization([], S)
    cond = np.linalg.cond(S, 2)
    if not np.isfinite(cond) or cond > cond_max:
        raise IllConditioned(f"condition number {cond:.3e}")
    factors, K = _symplectic_gs_core(S)
    return PointFactorization(factors, K)


# ---------------------------------------------------------------------------
# Gauss-Jordan (near identity)
# ---------------------------------------------------------------------------

def _symplectic_gj_core(S, lagrangian=False, pivot_min=0.5, prune=True):
    """Factors annihilating a near-identity symplectic matrix.

    Shape: clear the lower-left block with one symmetric lower move, the
    upper-right with a symmetric upper move, then lift a Gauss-Jordan
    factorization of the remaining GL(k) block to blockdiag form. With
    ``lagrangian=True`` every emitted factor keeps (v, w) inside a single
    Lagrangian summand.
    """
    n = S.shape[0]
    k = n // 2
    dtype = np.result_type(S.dtype, float)
    S = S.astype(dtype, copy=True)
    S11 = S[:k, :k]
    S21 = S[k:, :k]
    smin = np.linalg.svd(S11, compute_uv=False)[-1]
    if smin < pivot_min:
        raise NotNearIdentity(f"upper-left block pivot {smin:.3e} below bound")
    W = -S21 @ np.linalg.inv(S11)
    W = (W + W.T) / 2.0
    factors = _sym_block_pieces(W, k, lower=True, dtype=dtype, prune=prune)
    FW = np.eye(n, dtype=dtype)
    FW[k:, :k] = W
    S1 = FW @ S
    S1[k:, :k] = 0.0
    M = S1[:k, :k]
    X = S1[:k, k:]
    Z = -X @ M.T
    Z = (Z + Z.T) / 2.0
    factors += _sym_block_pieces(Z, k, lower=False, dtype=dtype, prune=prune)
    # remaining block-diagonal part: lift a pivot-free GJ run on M
    gj_factors, delta = _gauss_jordan_core(M.copy(), pivot_min=pivot_min,
                                           mode="general", prune=prune)
    lagrangian_ok = True
    for sf in gj_factors:
        if lagrangian:
            lifted = _lift_shear_same_l(sf, k, prune=prune)
            if lifted is None:
                lagrangian_ok = False
                lifted = [_lift_shear_cross(sf, k)]
        else:
            lifted = [_lift_shear_cross(sf, k)]
        factors.extend(lifted)
    if lagrangian:
        factors += _same_l_det_leftover(delta, k, dtype, prune=prune)
    else:
        fs = symplectic_diag_pair(1.0 / delta, k - 1, k, dtype)
        if prune and delta == 1.0:
            fs = []
        factors += fs
    return factors, lagrangian_ok


def symplectic_gauss_jordan_near_identity(S, tol=SYMPLECTIC_TOL,
                                          pivot_min=0.5, lagrangian=None):
    """Factor a near-identity symplectic matrix into transvections.

    Residual is the identity; parameters vanish continuously as S -> I.
    ``lagrangian=None`` auto-detects block-diagonality with respect to
    the standard Lagrangian splitting and, when present, emits only
    factors whose (v, w) lie in a single summand.
    """
    S = as_square(S)
    n = S.shape[0]
    if n % 2:
        raise OddDimension("even dimension required")
    if not is_symplectic(S, tol):
        raise NotSymplectic("input does not preserve the standard form")
    k = n // 2
    if lagrangian is None:
        off = max(np.max(np.abs(S[:k, k:])), np.max(np.abs(S[k:, :k])))
        lagrangian = off <= 1e-12
    factors, _ = _symplectic_gj_core(S, lagrangian=lagrangian,
                                     pivot_min=pivot_min)
    return PointFactorization(factors, np.eye(n, dtype=S.dtype))
