"""Exact energies and resilience bound for linear driftless systems x' = B u.

Conventions shared by every function here:

- x_tilde = x0 - x_tg, the displacement the inputs must undo in time t_f.
- B_c, B_uc are the controlled / uncontrolled column blocks of B; B_c must
  have full row rank.
- M = B_c^+T B_c^+ is the metric that turns a displacement into
  malfunctioning energy.
- u_uc_mean is the mean of the uncontrolled input over [0, t_f]; only the
  mean enters the malfunctioning energy.
"""

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from src.common.utils import LOG
from src.model.signals import InputSignal, check_unit_box
from src.numerics import induced_norm, lambda_max_sym, pinv, sym_eig, vec_norm

# Largest p for which the uncontrolled gain is checked on every box vertex
_MAX_VERTEX_INPUTS = 16


class WorstCaseTotal(NamedTuple):
    """Worst-case total energy with the constant uncontrolled input attaining it.

    `degenerate` marks a zero cross term, where both signs are equally bad
    and `worst_sign` is reported as +1.
    """

    value: float
    worst_sign: int
    degenerate: bool


@dataclass
class DriftlessEnergies:
    """All driftless energies for one task.

    `e_worst_total_exact_1act` and `worst_uuc_sign` are only set when p = 1.
    """

    e_nominal: float
    e_malf: float
    e_worst_total_bound: float
    e_worst_total_exact_1act: Optional[float]
    worst_uuc_sign: Optional[int]
    degenerate: bool
    feasible: bool
    u_ls: np.ndarray
    u_uc_mean: np.ndarray


def _vec(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float)).ravel()


def _mat(M) -> np.ndarray:
    arr = np.asarray(M, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr


def _check_horizon(t_f: float) -> None:
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")


def _require_single_uncontrolled(B_uc: np.ndarray) -> None:
    if B_uc.shape[1] != 1:
        raise ValueError(
            f"Closed form needs exactly one uncontrolled input, got p={B_uc.shape[1]}"
        )


def malfunction_metric(B_c) -> np.ndarray:
    """M = B_c^+T B_c^+ (symmetric, n x n)."""
    B_c_pinv = pinv(_mat(B_c))
    return B_c_pinv.T @ B_c_pinv


def feasibility_driftless(B, x_tilde, t_f: float) -> bool:
    """True iff the least-norm constant control -B^+ x_tilde / t_f is admissible."""
    _check_horizon(t_f)
    required = vec_norm(pinv(_mat(B)) @ _vec(x_tilde), np.inf)
    return bool(required <= t_f * (1 + 1e-12))


def least_squares_control(B, x_tilde, t_f: float) -> np.ndarray:
    """Minimum-energy control, the constant -B^+ x_tilde / t_f."""
    _check_horizon(t_f)
    return -(pinv(_mat(B)) @ _vec(x_tilde)) / t_f


def nominal_energy_driftless(B, x_tilde, t_f: float) -> float:
    """E_N = ||B^+ x_tilde||_2^2 / t_f.

    Returned even when the task is infeasible; see `driftless_energies` for
    the flag.
    """
    _check_horizon(t_f)
    y = pinv(_mat(B)) @ _vec(x_tilde)
    return float(y @ y) / t_f


def malfunctioning_energy_driftless(B_c, B_uc, x_tilde, t_f: float, u_uc_mean) -> float:
    """E_M = ||B_c^+ (x_tilde + t_f B_uc u_uc_mean)||_2^2 / t_f.

    Raises:
        InadmissibleSignalError: If ||u_uc_mean||_inf > 1
    """
    _check_horizon(t_f)
    u_uc_mean = check_unit_box(u_uc_mean, "u_uc_mean")
    y = pinv(_mat(B_c)) @ (_vec(x_tilde) + t_f * (_mat(B_uc) @ u_uc_mean))
    return float(y @ y) / t_f


def total_energy_driftless(B_c, B_uc, x_tilde, t_f: float, u_uc: InputSignal) -> float:
    """Malfunctioning energy at the signal's mean plus the signal's own energy."""
    mean = u_uc.mean(t_f)
    return malfunctioning_energy_driftless(
        B_c, B_uc, x_tilde, t_f, mean
    ) + u_uc.energy(t_f)


def uncontrolled_spectral_term(B_uc) -> float:
    """Sum of lambda_i ||v_i||_1^2 over the eigenpairs of B_uc^T B_uc.

    Bounds ||B_uc u||_2^2 over the unit infinity-norm box; equals
    ||B_uc||_2^2 when p = 1.
    """
    B_uc = _mat(B_uc)
    spectrum = sym_eig(B_uc.T @ B_uc)
    l1_sq = np.sum(np.abs(spectrum.eigenvectors), axis=0) ** 2
    return float(np.sum(np.clip(spectrum.eigenvalues, 0.0, None) * l1_sq))


def uncontrolled_gain_bounded(B_c, B_uc) -> bool:
    """Whether the printed worst-case expressions dominate actual totals.

    The malfunctioning energy grows by t_f ||B_c^+ B_uc u||_2^2 while the
    worst-case expressions budget t_f times `uncontrolled_spectral_term`;
    this checks the first never exceeds the second on the unit box.
    """
    B_uc = _mat(B_uc)
    p = B_uc.shape[1]
    if p > _MAX_VERTEX_INPUTS:
        raise ValueError(f"Vertex check limited to p <= {_MAX_VERTEX_INPUTS}, got {p}")
    K = pinv(_mat(B_c)) @ B_uc
    vertices = np.array(list(itertools.product((-1.0, 1.0), repeat=p)))
    gain = float(np.max(np.sum((vertices @ K.T) ** 2, axis=1)))
    return gain <= uncontrolled_spectral_term(B_uc) * (1 + 1e-12) + 1e-15


def cross_term(B_c, B_uc, x_tilde) -> np.ndarray:
    """B_uc^T M x_tilde, the sensitivity of E_M to the uncontrolled mean / 2."""
    return _mat(B_uc).T @ malfunction_metric(B_c) @ _vec(x_tilde)


def worst_case_total_bound_driftless(B_c, B_uc, x_tilde, t_f: float) -> float:
    """Upper bound on the worst-case total energy for any number of uncontrolled inputs.

    ||B_c^+ x_tilde||^2 / t_f + t_f (sum_i lambda_i ||v_i||_1^2 + p)
    + 2 ||B_uc^T M x_tilde||_1
    """
    _check_horizon(t_f)
    B_uc = _mat(B_uc)
    y = pinv(_mat(B_c)) @ _vec(x_tilde)
    return (
        float(y @ y) / t_f
        + t_f * (uncontrolled_spectral_term(B_uc) + B_uc.shape[1])
        + 2.0 * vec_norm(cross_term(B_c, B_uc, x_tilde), 1)
    )


def worst_case_total_exact_1act(B_c, B_uc, x_tilde, t_f: float) -> WorstCaseTotal:
    """Worst-case total energy when a single actuator is lost.

    ||B_c^+ x_tilde||^2 / t_f + t_f (||B_uc||_2^2 + 1) + 2 |B_uc^T M x_tilde|,
    attained by the constant input sign(B_uc^T M x_tilde).

    Raises:
        ValueError: If B_uc has more than one column
    """
    _check_horizon(t_f)
    B_uc = _mat(B_uc)
    _require_single_uncontrolled(B_uc)
    y = pinv(_mat(B_c)) @ _vec(x_tilde)
    s = float(cross_term(B_c, B_uc, x_tilde)[0])
    sign = int(np.sign(s))
    degenerate = sign == 0
    if degenerate:
        LOG.debug("Cross term vanishes; worst-case sign is degenerate, using +1")
    value = (
        float(y @ y) / t_f
        + t_f * (induced_norm(B_uc, 2) ** 2 + 1.0)
        + 2.0 * abs(s)
    )
    return WorstCaseTotal(value=value, worst_sign=sign or 1, degenerate=degenerate)


def optimal_final_time(B_c, B_uc, x_tilde, u_uc_mean) -> float:
    """Final time minimizing the malfunctioning energy for a fixed uncontrolled mean.

    t_f* = ||B_c^+ x_tilde|| / ||B_c^+ B_uc u_uc_mean||

    Raises:
        ValueError: Zero displacement, or uncontrolled drift invisible through B_c^+
    """
    u_uc_mean = check_unit_box(u_uc_mean, "u_uc_mean")
    B_c_pinv = pinv(_mat(B_c))
    numerator = vec_norm(B_c_pinv @ _vec(x_tilde), 2)
    denominator = vec_norm(B_c_pinv @ _mat(B_uc) @ u_uc_mean, 2)
    if denominator == 0.0:
        raise ValueError("uncontrolled drift invisible through B_c^+")
    if numerator == 0.0:
        raise ValueError("Zero displacement has no positive optimal final time")
    return numerator / denominator


def resilience_bound_driftless(B, B_c, B_uc, t_f: float, R: float) -> float:
    """Upper bound on the additive energetic resilience r_A(t_f, R), p = 1.

    (R^2 / t_f) lambda_max(M - B^+T B^+) + 2 R ||B_uc^T M||_2 + t_f (||B_uc||_2^2 + 1)
    """
    _check_horizon(t_f)
    if R < 0:
        raise ValueError(f"R must be non-negative, got {R}")
    B_uc = _mat(B_uc)
    _require_single_uncontrolled(B_uc)
    M = malfunction_metric(B_c)
    B_pinv = pinv(_mat(B))
    quadratic = lambda_max_sym(M - B_pinv.T @ B_pinv)
    return (
        R**2 / t_f * quadratic
        + 2.0 * R * induced_norm(B_uc.T @ M, 2)
        + t_f * (induced_norm(B_uc, 2) ** 2 + 1.0)
    )


def driftless_energies(
    B, B_c, B_uc, x_tilde, t_f: float, u_uc_mean=None
) -> DriftlessEnergies:
    """Evaluate every driftless energy for one task.

    Args:
        B: Full input matrix
        B_c: Controlled columns
        B_uc: Uncontrolled columns
        x_tilde: x0 - x_tg
        t_f: Final time
        u_uc_mean: Uncontrolled mean for E_M; the worst-case sign when p = 1,
            all ones otherwise

    Returns:
        DriftlessEnergies with a feasibility flag instead of an error
    """
    B_uc = _mat(B_uc)
    p = B_uc.shape[1]
    exact = sign = None
    degenerate = False
    if p == 1:
        worst = worst_case_total_exact_1act(B_c, B_uc, x_tilde, t_f)
        exact, sign, degenerate = worst.value, worst.worst_sign, worst.degenerate
    if u_uc_mean is None:
        u_uc_mean = np.full(p, float(sign) if sign is not None else 1.0)
    u_uc_mean = check_unit_box(u_uc_mean, "u_uc_mean")

    feasible = feasibility_driftless(B, x_tilde, t_f)
    if not feasible:
        LOG.warning(
            "Task infeasible at t_f=%s: ||B^+ x_tilde||_inf exceeds t_f", t_f
        )
    return DriftlessEnergies(
        e_nominal=nominal_energy_driftless(B, x_tilde, t_f),
        e_malf=malfunctioning_energy_driftless(B_c, B_uc, x_tilde, t_f, u_uc_mean),
        e_worst_total_bound=worst_case_total_bound_driftless(B_c, B_uc, x_tilde, t_f),
        e_worst_total_exact_1act=exact,
        worst_uuc_sign=sign,
        degenerate=degenerate,
        feasible=feasible,
        u_ls=least_squares_control(B, x_tilde, t_f),
        u_uc_mean=u_uc_mean,
    )
