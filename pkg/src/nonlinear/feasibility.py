"""Feasibility of the mean controls for every response gap in the v_bar box.

A mean control is feasible when it lies in the unit infinity-norm box. Its
rows are affine in v (and in the uncontrolled mean), so the worst case
over the symmetric boxes has the closed form |a_i| + radius * ||row_i||_1.
"""

import itertools

import numpy as np

from src.numerics import pinv

_SLACK = 1e-12


def box_vertices(dim: int, radius: float = 1.0) -> np.ndarray:
    """All 2^dim vertices of the box ||x||_inf <= radius, shape (2^dim, dim)."""
    if dim < 0:
        raise ValueError(f"dim must be non-negative, got {dim}")
    corners = list(itertools.product((-1.0, 1.0), repeat=dim))
    return radius * np.array(corners, dtype=float).reshape(2**dim, dim)


def feasibility_nominal(B, x_tilde, t_f: float, v_bar: float) -> bool:
    """True iff B^+ (v - x_tilde) / t_f is admissible for every ||v||_inf <= v_bar."""
    if v_bar < 0:
        raise ValueError(f"v_bar must be non-negative, got {v_bar}")
    K = pinv(np.asarray(B, dtype=float))
    worst = np.abs(K @ np.asarray(x_tilde, dtype=float)) + v_bar * np.sum(
        np.abs(K), axis=1
    )
    return bool(np.all(worst <= t_f * (1 + _SLACK)))


def feasibility_malfunctioning(B_c, B_uc, x_tilde, t_f: float, v_bar: float) -> bool:
    """True iff the controlled mean is admissible for every v and uncontrolled mean."""
    if v_bar < 0:
        raise ValueError(f"v_bar must be non-negative, got {v_bar}")
    K = pinv(np.asarray(B_c, dtype=float))
    B_uc = np.asarray(B_uc, dtype=float).reshape(K.shape[1], -1)
    worst = (
        np.abs(K @ np.asarray(x_tilde, dtype=float))
        + v_bar * np.sum(np.abs(K), axis=1)
        + t_f * np.sum(np.abs(K @ B_uc), axis=1)
    )
    return bool(np.all(worst <= t_f * (1 + _SLACK)))


def response_gap_candidates(n: int, v_bar: float) -> np.ndarray:
    """Zero followed by the vertices of the v_bar box (only zero when v_bar = 0)."""
    zero = np.zeros((1, n))
    if v_bar <= 0:
        return zero
    return np.vstack([zero, box_vertices(n, v_bar)])
