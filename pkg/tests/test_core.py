import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blocknorms.core import (
    PsdBlockMatrix,
    Verdict,
    assemble,
    commutes,
    commutes_with_diagonal,
    complex_normal,
    hermitize,
    imag_part,
    matrix_abs,
    positivity,
    random_psd,
    real_part,
    split,
    sqrt_psd,
)
from blocknorms.constructions import example_C, example_Mx
from blocknorms.errors import DimensionMismatch, HermitianResidueTooLarge, NotPsd, NotSquare
from blocknorms.norms import singular_values

seeds = st.integers(0, 2**32 - 1)


class TestHermitize:
    def test_already_hermitian(self):
        M = np.array([[2, 1j], [-1j, 3]])
        np.testing.assert_array_equal(hermitize(M), M)

    def test_symmetrizes_small_residue(self):
        eps = 1e-14
        out = hermitize(np.array([[1, 1 + eps], [1, 1]]), tol=1e-12)
        np.testing.assert_allclose(out, [[1, 1 + eps / 2], [1 + eps / 2, 1]], rtol=0, atol=1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(HermitianResidueTooLarge):
            hermitize(np.array([[0, 1], [0, 0]]), tol=1e-12)

    def test_not_square(self):
        with pytest.raises(NotSquare):
            hermitize(np.ones((2, 3)))


def test_real_imag_parts_of_mx_block():
    X = np.diag([0.5j, -0.5j])
    np.testing.assert_array_equal(real_part(X), np.zeros((2, 2)))
    np.testing.assert_allclose(imag_part(X), np.diag([0.5, -0.5]))


def test_real_part_of_example_c_block():
    X = np.array([[1, -1], [0, 1 / 5]])
    np.testing.assert_allclose(real_part(X), [[1, -0.5], [-0.5, 0.2]])


def test_imag_part_fixed_points():
    H = random_psd(3, 1)
    np.testing.assert_array_equal(real_part(H), H)
    np.testing.assert_allclose(imag_part(H), 0, atol=1e-15)
    np.testing.assert_allclose(imag_part(1j * np.eye(3)), np.eye(3))


@given(seeds, st.integers(1, 6))
def test_real_plus_i_imag_reconstructs(seed, n):
    X = complex_normal(np.random.default_rng(seed), (n, n))
    np.testing.assert_allclose(real_part(X) + 1j * imag_part(X), X, rtol=0, atol=1e-15)
    R, I = real_part(X), imag_part(X)
    assert np.array_equal(R, R.conj().T) and np.array_equal(I, I.conj().T)


class TestPositivity:
    def test_example_c_positive_definite(self):
        assert positivity(example_C().matrix).verdict is Verdict.POSITIVE_DEFINITE

    def test_zero_block_indefinite(self):
        M = assemble(np.eye(2), 1j * np.eye(2), np.zeros((2, 2)))
        assert positivity(M.matrix).verdict is Verdict.INDEFINITE

    def test_zero_matrix(self):
        assert positivity(np.zeros((3, 3))).verdict is Verdict.POSITIVE_SEMIDEFINITE

    @pytest.mark.parametrize("diag, verdict", [
        ([1, 2], Verdict.POSITIVE_DEFINITE),
        ([0, 2], Verdict.POSITIVE_SEMIDEFINITE),
        ([-1, 2], Verdict.INDEFINITE),
        ([-1, 0], Verdict.NEGATIVE_SEMIDEFINITE),
        ([-1, -2], Verdict.NEGATIVE_DEFINITE),
    ])
    def test_classes(self, diag, verdict):
        v = positivity(np.diag(diag))
        assert v.verdict is verdict
        assert v.min_eigenvalue == min(diag) and v.max_eigenvalue == max(diag)

    def test_wishart_never_indefinite(self):
        for seed in range(500):
            n = seed % 8 + 1
            assert positivity(random_psd(n, seed)).is_psd


class TestMatrixAbs:
    def test_diagonal(self):
        np.testing.assert_allclose(matrix_abs(np.diag([-3, 2])), np.diag([3, 2]), atol=1e-15)

    def test_skew_part_of_mx(self):
        X = np.diag([0.5j, -0.5j])
        np.testing.assert_allclose(matrix_abs(X - X.conj().T), np.eye(2), atol=1e-15)

    def test_unitary(self):
        Q, _ = np.linalg.qr(complex_normal(np.random.default_rng(3), (4, 4)))
        np.testing.assert_allclose(matrix_abs(Q), np.eye(4), atol=1e-12)

    @given(seeds, st.integers(1, 6))
    def test_eigenvalues_are_singular_values(self, seed, n):
        X = complex_normal(np.random.default_rng(seed), (n, n))
        eig = np.sort(np.linalg.eigvalsh(matrix_abs(X)))[::-1]
        np.testing.assert_allclose(eig, singular_values(X), rtol=1e-10, atol=1e-12)


class TestSqrtPsd:
    def test_diagonal(self):
        np.testing.assert_allclose(sqrt_psd(np.diag([4, 9])), np.diag([2, 3]), atol=1e-15)

    def test_identity(self):
        np.testing.assert_allclose(sqrt_psd(np.eye(3)), np.eye(3), atol=1e-15)

    def test_mx(self):
        M = np.array(example_Mx(0.3).matrix)
        S = sqrt_psd(M)
        assert np.linalg.norm(S @ S - M) <= 1e-10
        assert positivity(S).is_psd

    def test_rejects_indefinite(self):
        with pytest.raises(NotPsd):
            sqrt_psd(np.diag([1, -1]))

    @given(seeds, st.integers(1, 12))
    @settings(max_examples=60)
    def test_square_recovers(self, seed, n):
        M = random_psd(n, seed)
        S = sqrt_psd(M)
        assert np.linalg.norm(S @ S - M) <= 1e-10 * max(1, np.linalg.norm(M))


class TestCommutes:
    def test_diagonals(self):
        assert commutes(np.diag([1, 2]), np.diag([3, 5]))

    def test_characterization(self):
        X = np.array([[0, 1], [0, 0]])
        assert not commutes(X, np.diag([1, 2]))
        assert commutes(X, np.diag([2, 2]))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            commutes(np.eye(2), np.eye(3))

    def test_with_diagonal_examples(self):
        X = complex_normal(np.random.default_rng(0), (3, 3))
        assert commutes_with_diagonal(X, [2, 2, 2])
        assert commutes_with_diagonal(np.diag([1, 2, 3]), [5, -1, 0])
        assert not commutes_with_diagonal(np.array([[0, 1], [1, 0]]), [1, 2])

    def test_with_diagonal_agrees_with_commutes(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            n = int(rng.integers(1, 6))
            a = rng.integers(0, 3, n).astype(float)
            X = complex_normal(rng, (n, n))
            mask = rng.uniform(size=(n, n)) < 0.5
            X[mask & (a[:, None] != a[None, :])] = 0
            assert commutes_with_diagonal(X, a) == commutes(X, np.diag(a))


class TestRandomPsd:
    def test_scalar(self):
        M = random_psd(1, 5)
        assert M.shape == (1, 1) and M[0, 0].real >= 0 and M[0, 0].imag == 0

    def test_deterministic(self):
        assert np.array_equal(random_psd(3, 7), random_psd(3, 7))

    def test_verdict(self):
        assert positivity(random_psd(4, 42)).verdict in (
            Verdict.POSITIVE_DEFINITE, Verdict.POSITIVE_SEMIDEFINITE)


class TestBlocks:
    def test_assemble_diag(self):
        M = assemble([[1]], [[0]], [[2]])
        np.testing.assert_array_equal(M.matrix, np.diag([1, 2]))

    def test_split_example_c(self):
        M = split(example_C().matrix, 2)
        np.testing.assert_allclose(M.A, np.diag([4 / 3, 1]))
        np.testing.assert_allclose(M.X, [[1, -1], [0, 0.2]])
        np.testing.assert_allclose(M.B, np.diag([1.5, 2]))

    @given(seeds, st.integers(2, 8), st.data())
    def test_round_trip_exact(self, seed, N, data):
        n = data.draw(st.integers(1, N - 1))
        M = random_psd(N, seed)
        S = split(M, n)
        assert np.array_equal(assemble(S.A, S.X, S.B).matrix, M)

    def test_bad_shapes(self):
        with pytest.raises(DimensionMismatch):
            assemble(np.eye(2), np.ones((3, 2)), np.eye(2))
        with pytest.raises(DimensionMismatch):
            split(np.eye(3), 3)

    def test_immutable(self):
        M = assemble(np.eye(2), np.zeros((2, 1)), np.eye(1))
        with pytest.raises(ValueError):
            M.A[0, 0] = 5

    def test_require_psd(self):
        bad = PsdBlockMatrix(np.eye(1), np.array([[2.0]]), np.eye(1))
        with pytest.raises(NotPsd):
            bad.require_psd()
        assert example_C().require_psd().psd_certified
