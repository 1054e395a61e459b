"""Pseudoinverse, norms and symmetric eigendecomposition.

All inputs are small dense float arrays (state dimensions of a handful);
every function is pure and returns fresh arrays.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from src.common.utils import config_section
from src.constants.resilience import FULL_RANK_TOL, PINV_RCOND, SYMMETRY_TOL

_VECTOR_ORDERS = {1: 1, 2: 2, np.inf: np.inf}
_MATRIX_ORDERS = {1: 1, 2: 2, np.inf: np.inf}


class AsymmetricMatrixError(ValueError):
    """Raised when a symmetric routine receives a non-symmetric matrix."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a symmetric matrix, eigenvalues in descending order.

    Columns of `eigenvectors` are orthonormal and pair with `eigenvalues`.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def _as_finite_matrix(M) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(M, dtype=float))
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"Expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Matrix has non-finite entries")
    return arr


def pinv(M) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD with rank-revealing cutoff.

    Singular values below rcond * max(rows, cols) * s_max are discarded,
    so rank-deficient inputs (zero rows, dependent columns) are handled.
    """
    arr = _as_finite_matrix(M)
    scale = config_section("numerics", "pinv_rcond", PINV_RCOND)
    return np.linalg.pinv(arr, rcond=scale * max(arr.shape))


def vec_norm(x, p=2) -> float:
    """Vector p-norm for p in {1, 2, inf}."""
    if p not in _VECTOR_ORDERS:
        raise ValueError(f"Unsupported vector norm order: {p}")
    arr = np.asarray(x, dtype=float).ravel()
    return float(np.linalg.norm(arr, ord=_VECTOR_ORDERS[p]))


def induced_norm(M, p=np.inf) -> float:
    """Induced matrix norm.

    p=1 is the max column-abs-sum, p=inf the max row-abs-sum and p=2 the
    largest singular value.
    """
    if p not in _MATRIX_ORDERS:
        raise ValueError(f"Unsupported induced norm order: {p}")
    arr = _as_finite_matrix(M)
    return float(np.linalg.norm(arr, ord=_MATRIX_ORDERS[p]))


def sym_eig(S) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    Raises:
        AsymmetricMatrixError: If max |S - S^T| exceeds the symmetry tolerance
    """
    arr = _as_finite_matrix(S)
    if arr.shape[0] != arr.shape[1]:
        raise AsymmetricMatrixError(f"Matrix is not square: shape {arr.shape}")
    tol = config_section("numerics", "symmetry_tol", SYMMETRY_TOL)
    asymmetry = float(np.max(np.abs(arr - arr.T)))
    if asymmetry > tol:
        raise AsymmetricMatrixError(
            f"Matrix is not symmetric (max |S - S^T| = {asymmetry:.3e})"
        )
    # eigh reads one triangle; symmetrize so round-off in the other is not ignored
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (arr + arr.T))
    order = np.argsort(eigenvalues)[::-1]
    return SpectralDecomposition(
        eigenvalues=eigenvalues[order], eigenvectors=eigenvectors[:, order]
    )


def lambda_max_sym(S) -> float:
    """Largest eigenvalue of a symmetric matrix (may be negative)."""
    return float(sym_eig(S).eigenvalues[0])


def is_full_row_rank(M, tol=None) -> bool:
    """Check full row rank through the residual M M^+ = I."""
    arr = _as_finite_matrix(M)
    if tol is None:
        tol = config_section("numerics", "full_rank_tol", FULL_RANK_TOL)
    residual = arr @ pinv(arr) - np.eye(arr.shape[0])
    return bool(np.max(np.abs(residual)) <= tol)


def penrose_residuals(M, M_pinv) -> Dict[str, float]:
    """Relative residuals of the four Penrose conditions.

    Each residual is a Frobenius norm divided by the norm of the matrix the
    condition should reproduce (or 1 when that matrix is zero).
    """
    M = _as_finite_matrix(M)
    X = np.atleast_2d(np.asarray(M_pinv, dtype=float))
    MX = M @ X
    XM = X @ M

    def rel(residual, reference):
        ref = np.linalg.norm(reference)
        return float(np.linalg.norm(residual) / (ref if ref > 0 else 1.0))

    return {
        "M X M = M": rel(MX @ M - M, M),
        "X M X = X": rel(XM @ X - X, X),
        "(M X)^T = M X": rel(MX.T - MX, MX),
        "(X M)^T = X M": rel(XM.T - XM, XM),
    }
