"""Decompositions, norms, and rank."""

import numpy as np
import pytest

import oracles
from lowrankseg import (
    DimensionError,
    ParameterError,
    SymmetryError,
    eig_sym,
    norm,
    numerical_rank,
    row_space_projector,
    svd,
)
from lowrankseg.linalg import as_matrix

# eigenvalues of the seed-7 symmetric 8x8 test matrix, computed beforehand
# with the characteristic-polynomial oracle in oracles.char_poly_eigenvalues
SEED7_EIGENVALUES = np.array(
    [
        1.9916105129399129,
        1.3335804019972186,
        0.2917593843448679,
        -0.0022168226084205355,
        -0.8007426602420548,
        -1.9683296417014253,
        -2.7979104820142444,
        -4.062554111100679,
    ]
)


def _symmetric(seed, n):
    a = np.random.default_rng(seed).standard_normal((n, n))
    return (a + a.T) / 2


class TestAsMatrix:
    def test_rejects_nan(self):
        with pytest.raises(ParameterError):
            as_matrix(np.array([[1.0, np.nan]]))

    def test_rejects_inf(self):
        with pytest.raises(ParameterError):
            as_matrix(np.array([[np.inf, 0.0]]))

    def test_rejects_vector(self):
        with pytest.raises(DimensionError):
            as_matrix(np.ones(3))

    def test_rejects_empty(self):
        with pytest.raises(DimensionError):
            as_matrix(np.zeros((0, 3)))


class TestEigSym:
    def test_diagonal(self):
        res = eig_sym(np.diag([3.0, 1.0]))
        assert np.allclose(res.values, [3.0, 1.0])
        assert np.allclose(np.abs(res.vectors), np.eye(2))

    def test_zero_matrix(self):
        res = eig_sym(np.zeros((4, 4)))
        assert np.allclose(res.values, 0.0)

    def test_matches_char_poly_oracle(self):
        s = _symmetric(7, 8)
        res = eig_sym(s)
        assert np.abs(res.values - SEED7_EIGENVALUES).max() < 1e-9
        # and the frozen values still agree with a fresh oracle run
        assert np.abs(oracles.char_poly_eigenvalues(s) - SEED7_EIGENVALUES).max() < 1e-11

    def test_factor_invariants(self):
        s = _symmetric(21, 10)
        res = eig_sym(s)
        assert np.linalg.norm(res.vectors.T @ res.vectors - np.eye(10), "fro") < 1e-10
        rel = np.linalg.norm(res.reconstruct() - s, "fro") / np.linalg.norm(s, "fro")
        assert rel < 1e-8
        assert np.all(np.diff(res.values) <= 0)

    def test_symmetrizes_small_asymmetry(self):
        s = _symmetric(3, 5)
        noisy = s + 1e-12 * np.triu(np.ones((5, 5)), 1)
        res = eig_sym(noisy, symmetry_tol=1e-8)
        assert np.abs(res.values - eig_sym(s).values).max() < 1e-10

    def test_non_square_raises(self):
        with pytest.raises(DimensionError):
            eig_sym(np.ones((2, 3)))

    def test_asymmetry_beyond_tolerance_raises(self):
        a = np.array([[0.0, 1.0], [-1.0, 0.0]])
        with pytest.raises(SymmetryError):
            eig_sym(a, symmetry_tol=1e-8)


class TestSvd:
    def test_identity(self):
        res = svd(np.eye(3))
        assert np.allclose(res.singular_values, 1.0)

    def test_rank_one_outer_product(self):
        x = np.array([2.0, 0.0, 0.0])
        y = np.array([0.0, 3.0, 0.0, 0.0])
        res = svd(np.outer(x, y))
        assert abs(res.singular_values[0] - 6.0) < 1e-12
        assert np.abs(res.singular_values[1:]).max() < 1e-12

    def test_squared_values_match_gram_eigenvalues(self):
        a = np.random.default_rng(11).standard_normal((6, 4))
        res = svd(a)
        gram_eigs = eig_sym(a.T @ a).values
        assert np.abs(res.singular_values**2 - gram_eigs).max() < 1e-9

    def test_factor_invariants(self):
        a = np.random.default_rng(13).standard_normal((7, 4))
        res = svd(a)
        assert np.linalg.norm(res.u.T @ res.u - np.eye(4), "fro") < 1e-10
        assert np.linalg.norm(res.v.T @ res.v - np.eye(4), "fro") < 1e-10
        assert np.all(np.diff(res.singular_values) <= 0)
        assert np.all(res.singular_values >= 0)
        rel = np.linalg.norm(res.reconstruct() - a, "fro") / np.linalg.norm(a, "fro")
        assert rel < 1e-8


class TestNorm:
    def test_diagonal(self):
        d = np.diag([3.0, 4.0])
        assert abs(norm(d, "nuclear") - 7.0) < 1e-12
        assert abs(norm(d, "frobenius") - 5.0) < 1e-12
        assert abs(norm(d, "operator") - 4.0) < 1e-12
        assert abs(norm(d, "l1") - 7.0) < 1e-12
        assert abs(norm(d, "l21") - 7.0) < 1e-12

    @pytest.mark.parametrize("kind", ["nuclear", "frobenius", "operator", "l1", "l21"])
    def test_zero_matrix(self, kind):
        assert norm(np.zeros((3, 5)), kind) == 0.0

    def test_nuclear_matches_dual_sampling_oracle(self):
        a = np.random.default_rng(3).standard_normal((5, 5))
        attained = oracles.nuclear_norm_dual_sample(a, n_samples=500, seed=0)
        nuc = norm(a, "nuclear")
        assert attained <= nuc + 1e-9
        assert abs(attained - nuc) < 1e-3

    def test_frobenius_equals_trace_form(self):
        a = np.random.default_rng(5).standard_normal((4, 6))
        assert abs(norm(a, "frobenius") - np.sqrt(np.trace(a.T @ a))) < 1e-12

    def test_unknown_kind(self):
        with pytest.raises(ParameterError):
            norm(np.eye(2), "l2")


class TestNumericalRank:
    def test_identity(self):
        assert numerical_rank(np.eye(5), 1e-8) == 5

    def test_zero(self):
        assert numerical_rank(np.zeros((4, 4)), 1e-8) == 0

    def test_toy_data_rank(self, toy):
        assert numerical_rank(toy.x, 1e-8) == 20

    def test_bad_tolerance(self):
        with pytest.raises(ParameterError):
            numerical_rank(np.eye(2), 0.0)
        with pytest.raises(ParameterError):
            numerical_rank(np.eye(2), 1.0)


class TestRowSpaceProjector:
    def test_single_direction(self):
        p = row_space_projector(np.array([[1.0, 0.0], [0.0, 0.0]]))
        assert np.allclose(p, np.diag([1.0, 0.0]))

    def test_full_column_rank_gives_identity(self):
        x = np.random.default_rng(2).standard_normal((8, 5))
        assert np.allclose(row_space_projector(x), np.eye(5), atol=1e-10)

    def test_toy_projector_spectrum(self, toy):
        p = row_space_projector(toy.x)
        values = eig_sym(p).values
        assert int(np.sum(np.abs(values - 1.0) < 1e-8)) == 20
        assert np.abs(values[20:]).max() < 1e-8

    def test_symmetric_idempotent_trace(self):
        x = np.random.default_rng(17).standard_normal((6, 9))
        p = row_space_projector(x)
        r = numerical_rank(x)
        assert np.linalg.norm(p - p.T, "fro") < 1e-12
        assert np.linalg.norm(p @ p - p, "fro") < 1e-8
        assert abs(np.trace(p) - r) < 1e-8
