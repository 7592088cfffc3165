import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from unifactor.errors import NotNilpotentPair
from unifactor.linalg import (
    ShearFactor,
    determinant,
    elementary_shear,
    is_unipotent_rank_le,
    matrix_exp,
    operator_norm,
)
from unifactor.rand import random_skew, random_special


def power_iteration_norm(M, iters=500):
    """Independent operator-norm oracle: power iteration on M*M."""
    A = np.asarray(M)
    H = A.conj().T @ A
    x = np.ones(A.shape[0]) / np.sqrt(A.shape[0])
    for _ in range(iters):
        y = H @ x
        x = y / np.linalg.norm(y)
    return float(np.sqrt(np.real(x.conj() @ H @ x)))


def cofactor_det(M):
    """Recursive cofactor-expansion determinant (oracle)."""
    M = np.asarray(M)
    n = M.shape[0]
    if n == 1:
        return M[0, 0]
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        total += (-1) ** j * M[0, j] * cofactor_det(minor)
    return total


class TestElementaryShear:
    def test_single_entry(self):
        e1 = np.array([1.0, 0, 0])
        alpha = np.array([0, 2.0, 0])
        E = elementary_shear(e1, alpha).matrix()
        expected = np.eye(3)
        expected[0, 1] = 2.0
        assert_allclose(E, expected)

    def test_zero_functional_is_identity(self):
        E = elementary_shear([1.0, 2.0, 3.0], [0.0, 0.0, 0.0]).matrix()
        assert_allclose(E, np.eye(3))

    def test_projected_pair_is_nilpotent(self):
        rng = np.random.default_rng(7)
        v = rng.standard_normal(4)
        alpha = rng.standard_normal(4)
        alpha -= np.dot(alpha, v) / np.dot(v, v) * v
        M = elementary_shear(v, alpha).matrix()
        N = M - np.eye(4)
        assert operator_norm(N @ N) <= 1e-14

    def test_rejects_non_nilpotent_pair(self):
        with pytest.raises(NotNilpotentPair):
            elementary_shear([1.0, 0.0], [1.0, 0.0])

    def test_inverse_negates_alpha(self):
        rng = np.random.default_rng(3)
        v = rng.standard_normal(5)
        alpha = rng.standard_normal(5)
        alpha -= np.dot(alpha, v) / np.dot(v, v) * v
        F = elementary_shear(v, alpha)
        assert_allclose(F.matrix() @ F.inverse().matrix(), np.eye(5), atol=1e-13)

    @pytest.mark.parametrize("complex_scalars", [False, True])
    def test_det_one_and_unipotent(self, complex_scalars):
        rng = np.random.default_rng(11)
        for _ in range(25):
            v = rng.standard_normal(4)
            alpha = rng.standard_normal(4)
            if complex_scalars:
                v = v + 1j * rng.standard_normal(4)
                alpha = alpha + 1j * rng.standard_normal(4)
            alpha -= np.dot(alpha, v) / np.vdot(v, v).real * np.conj(v)
            M = elementary_shear(v, alpha).matrix()
            assert abs(determinant(M) - 1.0) <= 1e-13
            N = M - np.eye(4)
            assert operator_norm(N @ N) <= 1e-13


class TestUnipotencyTest:
    def test_identity_rank_zero(self):
        assert is_unipotent_rank_le(np.eye(4), 0)

    def test_single_entry_rank_one(self):
        M = np.eye(3)
        M[0, 2] = 3.0
        assert is_unipotent_rank_le(M, 1)
        assert not is_unipotent_rank_le(M, 0)

    def test_diagonal_not_unipotent(self):
        assert not is_unipotent_rank_le(np.diag([2.0, 0.5]), 1)


class TestOperatorNorm:
    def test_identity(self):
        assert operator_norm(np.eye(3)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert operator_norm(np.diag([3.0, 1 / 3])) == pytest.approx(3.0)

    def test_matches_power_iteration(self):
        rng = np.random.default_rng(12)
        M = rng.standard_normal((4, 4))
        assert operator_norm(M) == pytest.approx(power_iteration_norm(M), abs=1e-8)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_submultiplicative(self, seed):
        rng = np.random.default_rng(seed)
        A = rng.standard_normal((3, 3))
        B = rng.standard_normal((3, 3))
        assert operator_norm(A @ B) <= operator_norm(A) * operator_norm(B) + 1e-10


class TestMatrixExp:
    def test_zero(self):
        assert_allclose(matrix_exp(np.zeros((3, 3))), np.eye(3))

    def test_rotation_closed_form(self):
        theta = np.pi / 2
        A = theta * np.array([[0.0, -1.0], [1.0, 0.0]])
        assert_allclose(matrix_exp(A), [[0.0, -1.0], [1.0, 0.0]], atol=1e-14)

    def test_skew_gives_special_orthogonal(self):
        rng = np.random.default_rng(5)
        A = random_skew(rng, 3)
        Q = matrix_exp(A)
        assert_allclose(Q.T @ Q, np.eye(3), atol=1e-10)
        assert determinant(Q) == pytest.approx(1.0, abs=1e-10)

    def test_skew_hermitian_gives_unitary(self):
        rng = np.random.default_rng(6)
        A = random_skew(rng, 3, complex_scalars=True)
        Q = matrix_exp(A)
        assert_allclose(Q.conj().T @ Q, np.eye(3), atol=1e-10)

    def test_series_residual_small_norm(self):
        rng = np.random.default_rng(8)
        A = 0.01 * rng.standard_normal((4, 4))
        series = np.eye(4)
        term = np.eye(4)
        for n in range(1, 20):
            term = term @ A / n
            series = series + term
        assert operator_norm(matrix_exp(A) - series) <= 1e-12


class TestDeterminant:
    def test_identity(self):
        assert determinant(np.eye(5)) == pytest.approx(1.0)

    def test_shear_det_one(self):
        E = elementary_shear([0, 1.0, 0], [2.0, 0, 0]).matrix()
        assert determinant(E) == pytest.approx(1.0, abs=1e-14)

    def test_matches_cofactor_expansion(self):
        rng = np.random.default_rng(9)
        M = rng.standard_normal((3, 3))
        assert determinant(M) == pytest.approx(cofactor_det(M), abs=1e-12)

    def test_random_special_has_det_one(self):
        rng = np.random.default_rng(10)
        for k in (2, 3, 4):
            S = random_special(rng, k, scale=0.5)
            assert determinant(S) == pytest.approx(1.0, abs=1e-12)


def test_shear_dataclass_magnitude():
    F = ShearFactor(np.array([2.0, 0.0]), np.array([0.0, 3.0]))
    assert F.magnitude() == pytest.approx(6.0)
    assert F.dim == 2
