"""Dense small-matrix primitives shared by every energy computation."""

from .linalg import (
    AsymmetricMatrixError,
    SpectralDecomposition,
    induced_norm,
    is_full_row_rank,
    lambda_max_sym,
    penrose_residuals,
    pinv,
    sym_eig,
    vec_norm,
)

__all__ = [
    "AsymmetricMatrixError",
    "SpectralDecomposition",
    "induced_norm",
    "is_full_row_rank",
    "lambda_max_sym",
    "penrose_residuals",
    "pinv",
    "sym_eig",
    "vec_norm",
]
