"""Grönwall bound on the gap between the nonlinear and driftless responses.

The response gap is v = t_f B mean(u) - (x(t_f) - x0): zero for driftless
systems, and bounded in the infinity norm by v_bar for every admissible u.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.common.utils import LOG
from src.constants.resilience import SERIES_LIMIT_THRESHOLD
from src.model.signals import InputSignal, require_admissible
from src.model.types import ActuatorPartition, ControlSystem
from src.numerics import induced_norm, vec_norm
from src.simulate.integrator import integrate


@dataclass(frozen=True)
class VBound:
    """v_bar with the constants it was computed from (c = ||f0||_inf + ||B||_inf)."""

    v_bar: float
    c: float
    D_S: float
    t_f: float


def v_bound(
    D_f: float, D_g: float, f0_inf_norm: float, B_inf_norm: float, t_f: float
) -> VBound:
    """v_bar = [c (exp(t_f D_S) - 1) - t_f D_S ||B||_inf] / D_S with D_S = D_f + D_g.

    Evaluated as c expm1(t_f D_S) / D_S - t_f ||B||_inf; below the series
    threshold the limit t_f ||f0||_inf is returned.
    """
    for name, value in (
        ("D_f", D_f),
        ("D_g", D_g),
        ("||f0||_inf", f0_inf_norm),
        ("||B||_inf", B_inf_norm),
    ):
        if value < 0:
            raise ValueError(f"{name} must be non-negative, got {value}")
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")

    D_S = D_f + D_g
    c = f0_inf_norm + B_inf_norm
    if D_S < SERIES_LIMIT_THRESHOLD:
        v_bar = t_f * f0_inf_norm
    else:
        v_bar = c * np.expm1(t_f * D_S) / D_S - t_f * B_inf_norm
    return VBound(v_bar=max(float(v_bar), 0.0), c=c, D_S=D_S, t_f=t_f)


def v_bound_at_partition(
    system: ControlSystem, partition: ActuatorPartition, t_f: float
) -> VBound:
    return v_bound(
        system.lipschitz_f,
        system.lipschitz_g,
        vec_norm(partition.f0, np.inf),
        induced_norm(partition.B, np.inf),
        t_f,
    )


def v_bound_within_radius(
    system: ControlSystem, x_tg, R: float, t_f: float
) -> VBound:
    """One v_bar valid for every x0 with ||x0 - x_tg||_2 <= R.

    ||f(x0)||_inf and ||g(x0)||_inf are replaced by their Lipschitz envelopes
    around x_tg; v_bar is non-decreasing in both.
    """
    x_tg = np.asarray(x_tg, dtype=float)
    f0_env = vec_norm(system.drift(x_tg), np.inf) + system.lipschitz_f * R
    B_env = induced_norm(system.input_map(x_tg), np.inf) + system.lipschitz_g * R
    return v_bound(system.lipschitz_f, system.lipschitz_g, f0_env, B_env, t_f)


def empirical_v(
    system: ControlSystem,
    partition: ActuatorPartition,
    u: InputSignal,
    t_f: float,
    dt: Optional[float] = None,
    check_convergence: bool = False,
) -> np.ndarray:
    """Simulated response gap t_f B mean(u) - (x(t_f) - x0).

    Single-channel signals are applied to every input.
    """
    if u.channels != system.inputs:
        u = u.broadcast(system.inputs)
    require_admissible(u, t_f)
    trajectory = integrate(
        system, u, partition.x0, t_f, dt=dt, check_convergence=check_convergence
    )
    v = t_f * partition.B @ u.mean(t_f) - (trajectory.terminal_state - partition.x0)
    LOG.debug("Response gap for %s over t_f=%s: %s", u.label, t_f, v)
    return v
