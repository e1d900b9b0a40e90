import numpy as np
import pytest

from traceclass import kernel
from traceclass.errors import (
    EmptyMatrixError,
    NonFiniteError,
    NonSquareError,
    NotHermitianError,
    NotPsdError,
)

from conftest import A3, A3_HERMITIAN_EIGVALS, A3_SINGULAR_VALUES, cgauss
from oracles import hermitian2_eigvals, hermitian3_eigvals, singular_values3


def unitary_residual(q):
    return np.linalg.norm(q.conj().T @ q - np.eye(q.shape[1]))


class TestHermitianEig:
    def test_diagonal(self, method):
        w, q = kernel.hermitian_eig(np.diag([1.0, 3.0]), method=method)
        np.testing.assert_allclose(w, [3, 1])
        np.testing.assert_allclose(np.abs(q), [[0, 1], [1, 0]], atol=1e-15)

    def test_two_by_two(self, method):
        h = np.array([[2.0, 1.0], [1.0, 2.0]])
        w, q = kernel.hermitian_eig(h, method=method)
        np.testing.assert_allclose(w, hermitian2_eigvals(h), rtol=1e-14)
        np.testing.assert_allclose(w, [3, 1], rtol=1e-14)
        # eigenvectors up to phase
        assert abs(abs(np.vdot(q[:, 0], [1, 1])) / np.sqrt(2) - 1) < 1e-14
        assert abs(abs(np.vdot(q[:, 1], [1, -1])) / np.sqrt(2) - 1) < 1e-14

    def test_identity(self, method):
        w, q = kernel.hermitian_eig(np.eye(4), method=method)
        np.testing.assert_array_equal(w, np.ones(4))
        np.testing.assert_allclose(q @ q.conj().T, np.eye(4), atol=1e-15)

    def test_frozen_cubic_oracle(self, method):
        w, _ = kernel.hermitian_eig(A3 + A3.conj().T, method=method)
        np.testing.assert_allclose(w, A3_HERMITIAN_EIGVALS, rtol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 9])
    def test_reconstruction(self, rng, method, n):
        g = cgauss(rng, n, n)
        h = g + g.conj().T
        w, q = kernel.hermitian_eig(h, method=method)
        assert np.all(np.diff(w) <= 0)
        assert unitary_residual(q) <= 1e-9
        assert np.linalg.norm((q * w) @ q.conj().T - h) <= 1e-9 * np.linalg.norm(h)

    def test_rejects(self):
        with pytest.raises(NonSquareError):
            kernel.hermitian_eig(np.ones((2, 3)))
        with pytest.raises(NotHermitianError):
            kernel.hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))
        with pytest.raises(EmptyMatrixError):
            kernel.hermitian_eig(np.zeros((0, 0)))
        with pytest.raises(NonFiniteError):
            kernel.hermitian_eig(np.array([[np.nan]]))


class TestSvd:
    def test_diagonal(self, method):
        np.testing.assert_allclose(kernel.svd(np.diag([3.0, 4.0]), method=method).s, [4, 3])

    def test_nilpotent(self, method):
        f = kernel.svd(np.array([[0.0, 1.0], [0.0, 0.0]]), method=method)
        np.testing.assert_allclose(f.s, [1, 0], atol=1e-15)
        assert unitary_residual(f.U) < 1e-14 and unitary_residual(f.V) < 1e-14

    def test_frozen_cubic_oracle(self, method):
        np.testing.assert_allclose(kernel.svd(A3, method=method).s, A3_SINGULAR_VALUES, rtol=1e-12)

    def test_random_against_cubic_oracle(self, rng, method):
        for _ in range(20):
            t = cgauss(rng, 3, 3)
            np.testing.assert_allclose(kernel.svd(t, method=method).s, singular_values3(t), rtol=1e-9)

    @pytest.mark.parametrize("shape", [(1, 1), (4, 4), (3, 6), (6, 3), (10, 10)])
    def test_invariants(self, rng, method, shape):
        a = cgauss(rng, *shape)
        f = kernel.svd(a, method=method)
        assert f.s.shape == (min(shape),)
        assert np.all(np.diff(f.s) <= 0) and np.all(f.s >= 0)
        assert unitary_residual(f.U) <= 1e-9 and unitary_residual(f.V) <= 1e-9
        assert np.linalg.norm(f.reconstruct() - a) <= 1e-9 * np.linalg.norm(a)

    @pytest.mark.parametrize("rank", [0, 1, 2])
    def test_rank_deficient(self, rng, method, rank):
        a = cgauss(rng, 5, rank) @ cgauss(rng, rank, 5) if rank else np.zeros((5, 5))
        f = kernel.svd(a, method=method)
        assert unitary_residual(f.U) <= 1e-9 and unitary_residual(f.V) <= 1e-9
        assert np.linalg.norm(f.reconstruct() - a) <= 1e-9 * max(np.linalg.norm(a), 1)
        assert np.all(f.s[rank:] <= 1e-12 * max(f.s[0], 1))

    def test_jacobi_matches_lapack(self, rng):
        a = cgauss(rng, 7, 7)
        np.testing.assert_allclose(kernel.svd(a, method="jacobi").s, kernel.svd(a, method="lapack").s, rtol=1e-12)


class TestSqrtPsd:
    def test_diagonal(self, method):
        np.testing.assert_allclose(kernel.sqrt_psd(np.diag([4.0, 9.0]), method=method), np.diag([2, 3]), atol=1e-15)

    def test_two_by_two(self, method):
        r3 = np.sqrt(3.0)
        expected = np.array([[r3 + 1, r3 - 1], [r3 - 1, r3 + 1]]) / 2
        np.testing.assert_allclose(kernel.sqrt_psd(np.array([[2.0, 1.0], [1.0, 2.0]]), method=method), expected, rtol=1e-14)

    def test_zero(self, method):
        np.testing.assert_array_equal(kernel.sqrt_psd(np.zeros((3, 3)), method=method), np.zeros((3, 3)))

    def test_square_recovers(self, rng, method):
        g = cgauss(rng, 6, 6)
        p = g.conj().T @ g
        r = kernel.sqrt_psd(p, method=method)
        assert np.linalg.norm(r - r.conj().T) == 0
        assert kernel.hermitian_eig(r)[0][-1] >= -1e-12
        assert np.linalg.norm(r @ r - p) <= 1e-8 * np.linalg.norm(p)

    def test_clamps_tiny_negative(self):
        r = kernel.sqrt_psd(np.diag([1.0, -1e-12]))
        np.testing.assert_allclose(r, np.diag([1.0, 0.0]))

    def test_rejects_indefinite(self):
        with pytest.raises(NotPsdError):
            kernel.sqrt_psd(np.diag([1.0, -0.5]))
        with pytest.raises(NotHermitianError):
            kernel.sqrt_psd(np.array([[1.0, 1.0], [0.0, 1.0]]))


class TestAbsPolar:
    def test_abs_shift(self):
        np.testing.assert_allclose(kernel.abs_op([[0, 1], [0, 0]]), np.diag([0, 1]), atol=1e-15)

    def test_abs_unitary(self, rng):
        q, _ = np.linalg.qr(cgauss(rng, 4, 4))
        np.testing.assert_allclose(kernel.abs_op(q), np.eye(4), atol=1e-14)

    def test_abs_agrees_with_sqrt_of_gram(self, rng, method):
        t = cgauss(rng, 5, 5)
        np.testing.assert_allclose(kernel.abs_op(t, method=method), kernel.sqrt_psd(t.conj().T @ t, method=method), atol=1e-12)

    def test_abs_preserves_vector_norms(self, rng):
        t = cgauss(rng, 4, 4)
        a = kernel.abs_op(t)
        for _ in range(20):
            x = cgauss(rng, 4)
            assert abs(np.linalg.norm(a @ x) - np.linalg.norm(t @ x)) <= 1e-9 * np.linalg.norm(t @ x)

    def test_polar_shift(self):
        w, p = kernel.polar([[0, 1], [0, 0]])
        np.testing.assert_allclose(w, [[0, 1], [0, 0]], atol=1e-15)
        np.testing.assert_allclose(p, np.diag([0, 1]), atol=1e-15)
        np.testing.assert_allclose(w.conj().T @ w, np.diag([0, 1]), atol=1e-15)

    def test_polar_invertible_gives_unitary(self, rng, method):
        t = cgauss(rng, 4, 4)
        w, p = kernel.polar(t, method=method)
        assert unitary_residual(w) <= 1e-9
        assert np.linalg.norm(w @ p - t) <= 1e-9 * np.linalg.norm(t)

    def test_polar_rank_two(self, rng, method):
        t = cgauss(rng, 4, 2) @ cgauss(rng, 2, 4)
        w, p = kernel.polar(t, method=method)
        proj = w.conj().T @ w
        assert abs(np.trace(proj).real - 2) <= 1e-8
        assert np.linalg.norm(proj @ proj - proj) <= 1e-9
        # projection onto the orthogonal complement of the kernel: annihilates ker T
        _, s, v = np.linalg.svd(t)
        kernel_vecs = v.conj().T[:, 2:]
        assert np.linalg.norm(proj @ kernel_vecs) <= 1e-9
        assert np.linalg.norm(w @ p - t) <= 1e-9 * np.linalg.norm(t)

    def test_polar_rejects_rectangular(self):
        with pytest.raises(NonSquareError):
            kernel.polar(np.ones((2, 3)))


class TestOperatorNorm:
    def test_diagonal(self):
        assert kernel.operator_norm(np.diag([3.0, 4.0])) == pytest.approx(4.0, rel=1e-15)

    def test_rank_one(self, rng):
        x, y = cgauss(rng, 5), cgauss(rng, 5)
        assert kernel.operator_norm(np.outer(x, y.conj())) == pytest.approx(np.linalg.norm(x) * np.linalg.norm(y), rel=1e-12)

    def test_dominates_samples(self, rng):
        t = cgauss(rng, 5, 5)
        xs = cgauss(rng, 1000, 5)
        xs /= np.linalg.norm(xs, axis=1, keepdims=True)
        sampled = np.linalg.norm(xs @ t.T, axis=1)
        assert sampled.max() <= kernel.operator_norm(t) + 1e-6

    def test_norm_identities(self, rng, method):
        t = cgauss(rng, 6, 6)
        op = kernel.operator_norm(t, method=method)
        assert kernel.operator_norm(kernel.abs_op(t, method=method)) == pytest.approx(op, rel=1e-9)
        assert kernel.operator_norm(t.conj().T, method=method) == pytest.approx(op, rel=1e-9)
