import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from pytest import approx, mark, raises

from src.numerics import (
    AsymmetricMatrixError,
    induced_norm,
    is_full_row_rank,
    lambda_max_sym,
    penrose_residuals,
    pinv,
    sym_eig,
    vec_norm,
)

# Small integer matrices keep the condition number bounded
integer_matrices = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda shape: arrays(np.int64, shape, elements=st.integers(-5, 5))
)


@settings(max_examples=200, deadline=None)
@given(integer_matrices)
def test_pinv_satisfies_penrose_conditions(M):
    M = M.astype(float)
    residuals = penrose_residuals(M, pinv(M))
    assert len(residuals) == 4
    assert max(residuals.values()) <= 1e-8


def test_pinv_of_rank_deficient_matrix():
    M = np.array([[1.0, 2.0], [2.0, 4.0]])
    X = pinv(M)
    np.testing.assert_allclose(X, M.T / 25.0, atol=1e-12)


def test_pinv_of_zero_row_keeps_shape():
    M = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    np.testing.assert_allclose(pinv(M), M.T, atol=1e-15)


def test_pinv_rejects_non_finite():
    with raises(ValueError, match="non-finite"):
        pinv([[1.0, np.nan]])


@mark.parametrize(
    "p, expected",
    [(1, 7.0), (2, 5.0), (np.inf, 4.0)],
)
def test_vec_norm(p, expected):
    assert vec_norm([3.0, -4.0], p) == approx(expected)


def test_vec_norm_rejects_other_orders():
    with raises(ValueError, match="Unsupported"):
        vec_norm([1.0, 2.0], 3)


@mark.parametrize("p, expected", [(1, 6.0), (np.inf, 7.0)])
def test_induced_norm_abs_sums(p, expected):
    M = np.array([[1.0, -2.0], [3.0, 4.0]])
    assert induced_norm(M, p) == approx(expected)


def test_induced_two_norm_is_largest_singular_value():
    M = np.diag([3.0, -7.0, 1.0])
    assert induced_norm(M, 2) == approx(7.0)


def test_sym_eig_descending_and_reconstructs():
    S = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, -1.0]])
    spectrum = sym_eig(S)
    np.testing.assert_allclose(spectrum.eigenvalues, [3.0, 1.0, -1.0], atol=1e-12)
    np.testing.assert_allclose(spectrum.reconstruct(), S, atol=1e-12)
    V = spectrum.eigenvectors
    np.testing.assert_allclose(V.T @ V, np.eye(3), atol=1e-12)


def test_sym_eig_rejects_asymmetric():
    with raises(AsymmetricMatrixError, match="not symmetric"):
        sym_eig([[1.0, 2.0], [0.0, 1.0]])


def test_sym_eig_rejects_non_square():
    with raises(AsymmetricMatrixError, match="not square"):
        sym_eig(np.ones((2, 3)))


def test_lambda_max_can_be_negative():
    assert lambda_max_sym(-np.eye(2)) == approx(-1.0)


@mark.parametrize(
    "M, expected",
    [
        ([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]], True),
        ([[2.0, 1.0, 1.0], [0.2, -1.0, 1.0]], True),
        ([[1.0, 2.0], [2.0, 4.0]], False),
        ([[1.0, 0.0], [0.0, 0.0]], False),
    ],
)
def test_is_full_row_rank(M, expected):
    assert is_full_row_rank(M) is expected
