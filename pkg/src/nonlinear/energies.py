"""Approximate energies and resilience bounds for Lipschitz nonlinear systems.

The nonlinear formulas are the driftless ones evaluated at the effective
displacement x_tilde - v, where v is the response gap bounded by v_bar.
They rest on approximating an input's energy by t_f ||mean||_2^2, so
every value here is approximate.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from src.driftless.energies import (
    WorstCaseTotal,
    malfunctioning_energy_driftless,
    malfunction_metric,
    nominal_energy_driftless,
    resilience_bound_driftless,
    uncontrolled_spectral_term,
    worst_case_total_bound_driftless,
    worst_case_total_exact_1act,
)
from src.model.signals import InputSignal, check_unit_box
from src.nonlinear.feasibility import response_gap_candidates
from src.numerics import induced_norm, lambda_max_sym, pinv, vec_norm


@dataclass(frozen=True)
class MeanControl:
    """Least-norm mean control and the response gap it was computed for."""

    value: np.ndarray
    v_used: np.ndarray
    feasible: bool


def _effective_displacement(x_tilde, v, v_bar: Optional[float]) -> np.ndarray:
    x_tilde = np.atleast_1d(np.asarray(x_tilde, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.shape != x_tilde.shape:
        raise ValueError(f"v {v.shape} and x_tilde {x_tilde.shape} differ in shape")
    if v_bar is not None and vec_norm(v, np.inf) > v_bar * (1 + 1e-12) + 1e-15:
        raise ValueError(
            f"||v||_inf = {vec_norm(v, np.inf):.6g} exceeds v_bar = {v_bar:.6g}"
        )
    return x_tilde - v


def mean_control_nominal(
    B, x_tilde, t_f: float, v, v_bar: Optional[float] = None
) -> MeanControl:
    """u_LS = B^+ (v - x_tilde) / t_f, feasible when inside the unit box."""
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")
    y = _effective_displacement(x_tilde, v, v_bar)
    value = -(pinv(np.asarray(B, dtype=float)) @ y) / t_f
    return MeanControl(
        value=value,
        v_used=np.asarray(v, dtype=float),
        feasible=bool(vec_norm(value, np.inf) <= 1 + 1e-12),
    )


def mean_control_malfunctioning(
    B_c, B_uc, x_tilde, t_f: float, v, u_uc_mean, v_bar: Optional[float] = None
) -> MeanControl:
    """u_c_LS = B_c^+ (v - x_tilde - t_f B_uc u_uc_mean) / t_f."""
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")
    u_uc_mean = check_unit_box(u_uc_mean, "u_uc_mean")
    y = _effective_displacement(x_tilde, v, v_bar)
    B_uc = np.asarray(B_uc, dtype=float).reshape(y.size, -1)
    value = -(pinv(np.asarray(B_c, dtype=float)) @ (y + t_f * B_uc @ u_uc_mean)) / t_f
    return MeanControl(
        value=value,
        v_used=np.asarray(v, dtype=float),
        feasible=bool(vec_norm(value, np.inf) <= 1 + 1e-12),
    )


def nominal_energy_approx(B, x_tilde, t_f: float, v) -> float:
    """||B^+ (v - x_tilde)||_2^2 / t_f."""
    return nominal_energy_driftless(B, _effective_displacement(x_tilde, v, None), t_f)


def malfunctioning_energy_approx(B_c, B_uc, x_tilde, t_f: float, v, u_uc_mean) -> float:
    """||B_c^+ (v - x_tilde - t_f B_uc u_uc_mean)||_2^2 / t_f."""
    return malfunctioning_energy_driftless(
        B_c, B_uc, _effective_displacement(x_tilde, v, None), t_f, u_uc_mean
    )


def total_energy_approx(B_c, B_uc, x_tilde, t_f: float, v, u_uc: InputSignal) -> float:
    mean = u_uc.mean(t_f)
    return malfunctioning_energy_approx(B_c, B_uc, x_tilde, t_f, v, mean) + u_uc.energy(
        t_f
    )


def worst_case_total_bound(B_c, B_uc, x_tilde, t_f: float, v) -> float:
    return worst_case_total_bound_driftless(
        B_c, B_uc, _effective_displacement(x_tilde, v, None), t_f
    )


def worst_case_total_1act(B_c, B_uc, x_tilde, t_f: float, v) -> WorstCaseTotal:
    """Single lost actuator; the sign maximizes the cross term at x_tilde - v."""
    return worst_case_total_exact_1act(
        B_c, B_uc, _effective_displacement(x_tilde, v, None), t_f
    )


def resilience_bound_general(
    B, B_c, B_uc, t_f: float, R: float, v_bar: float, n: int
) -> float:
    """Resilience bound for any number of uncontrolled inputs.

    t_f (sum_i lambda_i ||v_i||_1^2 + p) + (rho^2 / t_f) lambda_max(M - B^+T B^+)
    + 2 n rho ||B_uc^T M||_2, with rho = R + v_bar sqrt(n). The matrix norm
    is the largest singular value.
    """
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")
    if R < 0 or v_bar < 0:
        raise ValueError(f"R and v_bar must be non-negative, got {R}, {v_bar}")
    B_uc = np.asarray(B_uc, dtype=float)
    if B_uc.ndim == 1:
        B_uc = B_uc[:, None]
    rho = R + v_bar * np.sqrt(n)
    M = malfunction_metric(B_c)
    B_pinv = pinv(np.asarray(B, dtype=float))
    return float(
        t_f * (uncontrolled_spectral_term(B_uc) + B_uc.shape[1])
        + rho**2 / t_f * lambda_max_sym(M - B_pinv.T @ B_pinv)
        + 2.0 * n * rho * induced_norm(B_uc.T @ M, 2)
    )


def resilience_bound_1act(
    B, B_c, B_uc, t_f: float, R: float, v_bar: float, n: int
) -> float:
    """Single-actuator bound: the driftless bound at radius R + v_bar sqrt(n)."""
    if v_bar < 0:
        raise ValueError(f"v_bar must be non-negative, got {v_bar}")
    return resilience_bound_driftless(B, B_c, B_uc, t_f, R + v_bar * np.sqrt(n))


class GapPoint(NamedTuple):
    """Response gap maximizing worst-case total minus nominal energy."""

    v: np.ndarray
    e_nominal: float
    e_worst_total: float
    worst_sign: Optional[int]
    degenerate: bool

    @property
    def gap(self) -> float:
        return self.e_worst_total - self.e_nominal


def worst_case_gap(B, B_c, B_uc, x_tilde, t_f: float, v_bar: float) -> GapPoint:
    """Worst-case total minus nominal energy, maximized over the response gap v.

    Candidates for v are zero and the vertices of the v_bar box.

    The worst-case total is the closed form when one actuator is lost and
    the upper bound otherwise.
    """
    x_tilde = np.atleast_1d(np.asarray(x_tilde, dtype=float))
    B_uc = np.asarray(B_uc, dtype=float).reshape(x_tilde.size, -1)
    best = None
    for v in response_gap_candidates(x_tilde.size, v_bar):
        e_nominal = nominal_energy_approx(B, x_tilde, t_f, v)
        if B_uc.shape[1] == 1:
            worst = worst_case_total_1act(B_c, B_uc, x_tilde, t_f, v)
            point = GapPoint(
                v, e_nominal, worst.value, worst.worst_sign, worst.degenerate
            )
        else:
            total = worst_case_total_bound(B_c, B_uc, x_tilde, t_f, v)
            point = GapPoint(v, e_nominal, total, None, False)
        if best is None or point.gap > best.gap:
            best = point
    return best
