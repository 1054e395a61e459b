"""Brute-force and closed-form references used to cross-check the formulas."""

from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from src.common.utils import LOG
from src.constants.resilience import OPT_TF_WINDOW
from src.model.signals import InputSignal, check_unit_box
from src.nonlinear.feasibility import box_vertices
from src.numerics import induced_norm, pinv

# Grid brute force is limited to this many constant inputs
MAX_BRUTE_FORCE_INPUTS = 3


class OracleError(RuntimeError):
    """Raised when an oracle cannot produce a reference value."""


def brute_force_constant_min(
    B, x_tilde, t_f: float, grid_step: float, tolerance: Optional[float] = None
) -> float:
    """Minimum t_f ||u||_2^2 over constant controls on a grid in [-1, 1]^(m+p).

    A grid point counts when the driftless terminal state x0 + t_f B u is
    within `tolerance` of the target in the infinity norm (default
    t_f * grid_step * ||B||_inf).

    Raises:
        ValueError: More than three inputs or a bad grid step
        OracleError: No grid point reaches the target
    """
    B = np.atleast_2d(np.asarray(B, dtype=float))
    x_tilde = np.asarray(x_tilde, dtype=float)
    inputs = B.shape[1]
    if inputs > MAX_BRUTE_FORCE_INPUTS:
        raise ValueError(f"Brute force supports at most 3 inputs, got {inputs}")
    if not 0 < grid_step <= 1:
        raise ValueError(f"grid_step must be in (0, 1], got {grid_step}")
    if tolerance is None:
        tolerance = t_f * grid_step * induced_norm(B, np.inf)

    axis = np.linspace(-1.0, 1.0, int(round(2.0 / grid_step)) + 1)
    if inputs > 1:
        rest = np.stack(np.meshgrid(*([axis] * (inputs - 1)), indexing="ij"), axis=-1)
        rest = rest.reshape(-1, inputs - 1)
    else:
        rest = np.zeros((1, 0))

    best = np.inf
    # One slab per value of the first input keeps memory at len(axis)^(inputs-1)
    for first in axis:
        controls = np.column_stack([np.full(len(rest), first), rest])
        miss = np.max(np.abs(x_tilde + t_f * controls @ B.T), axis=1)
        hits = controls[miss <= tolerance]
        if hits.size:
            best = min(best, float(np.min(np.sum(hits**2, axis=1))))

    if not np.isfinite(best):
        raise OracleError("target unreachable at this grid resolution")
    return t_f * best


def brute_force_opt_tf(
    B_c,
    B_uc,
    x_tilde,
    u_uc_mean,
    window: Tuple[float, float] = OPT_TF_WINDOW,
    tol: float = 1e-10,
) -> float:
    """Golden-section minimizer of the malfunctioning energy over log t_f.

    Raises:
        OracleError: No interior minimizer (flat or monotone objective), or
            the search left the window
    """
    u_uc_mean = check_unit_box(u_uc_mean, "u_uc_mean")
    B_c_pinv = pinv(np.asarray(B_c, dtype=float))
    B_uc = np.asarray(B_uc, dtype=float).reshape(B_c_pinv.shape[1], -1)
    a = B_c_pinv @ np.asarray(x_tilde, dtype=float)
    b = B_c_pinv @ B_uc @ u_uc_mean
    if not np.any(b) or not np.any(a):
        raise OracleError("flat objective: malfunctioning energy is monotone in t_f")

    def objective(log_t):
        t = np.exp(log_t)
        y = a + t * b
        return float(y @ y) / t

    lo, hi = np.log(window[0]), np.log(window[1])
    result = minimize_scalar(
        objective, bracket=(lo, hi), method="golden", tol=tol, options={"maxiter": 500}
    )
    if not lo <= result.x <= hi:
        raise OracleError(
            f"Minimizer t_f={np.exp(result.x):.6g} outside window {window}"
        )
    return float(np.exp(result.x))


def enumerate_feasibility_nominal(B, x_tilde, t_f: float, v_bar: float) -> bool:
    """Check the nominal mean control on every vertex of the v_bar box."""
    K = pinv(np.asarray(B, dtype=float))
    x_tilde = np.asarray(x_tilde, dtype=float)
    for v in box_vertices(x_tilde.size, v_bar):
        if np.max(np.abs(K @ (v - x_tilde))) / t_f > 1 + 1e-12:
            return False
    return True


def enumerate_feasibility_malfunctioning(
    B_c, B_uc, x_tilde, t_f: float, v_bar: float
) -> bool:
    """Check the controlled mean on every (v, uncontrolled mean) vertex pair."""
    K = pinv(np.asarray(B_c, dtype=float))
    x_tilde = np.asarray(x_tilde, dtype=float)
    B_uc = np.asarray(B_uc, dtype=float).reshape(x_tilde.size, -1)
    for v in box_vertices(x_tilde.size, v_bar):
        for u_uc in box_vertices(B_uc.shape[1]):
            u_c = K @ (v - x_tilde - t_f * B_uc @ u_uc) / t_f
            if np.max(np.abs(u_c)) > 1 + 1e-12:
                return False
    return True


def sampled_energy(u: InputSignal, t_f: float, samples: int = 10_001) -> float:
    """Simpson-rule energy of u on a uniform grid; accurate for smooth signals."""
    if samples < 3:
        raise ValueError(f"Need at least 3 samples, got {samples}")
    times = np.linspace(0.0, t_f, samples)
    return float(simpson(np.sum(u.sample(times) ** 2, axis=1), x=times))


def linear_reference_terminal(
    A, x0, t_f: float, B=None, u_const: Optional[Sequence[float]] = None
) -> np.ndarray:
    """x(t_f) for x' = A x + B u with constant u, via the matrix exponential.

    The input is folded into an augmented state [x; 1] so one expm call
    covers both the free and the forced response.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    x0 = np.asarray(x0, dtype=float)
    n = A.shape[0]
    forcing = np.zeros(n)
    if B is not None and u_const is not None:
        forcing = np.atleast_2d(np.asarray(B, dtype=float)) @ np.asarray(
            u_const, dtype=float
        )
    augmented = np.zeros((n + 1, n + 1))
    augmented[:n, :n] = A
    augmented[:n, n] = forcing
    terminal = expm(augmented * t_f) @ np.append(x0, 1.0)
    LOG.debug("Matrix-exponential reference at t_f=%s: %s", t_f, terminal[:n])
    return terminal[:n]
