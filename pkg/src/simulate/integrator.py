"""Fixed-step classical Runge-Kutta integration of x' = f(x) + g(x) u(t)."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.common.env import get_env_float
from src.common.utils import LOG, config_section
from src.constants.resilience import CONVERGENCE_TOL, DT_ENV_VAR, INTEGRATOR_STEPS
from src.model.signals import InputSignal, require_admissible
from src.model.types import ControlSystem


class IntegrationError(RuntimeError):
    """Raised on a non-finite state or a failed step-doubling check."""


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    dt: float

    @property
    def terminal_state(self) -> np.ndarray:
        return self.states[-1]


def resolve_step(t_f: float, dt: Optional[float] = None) -> Tuple[int, float]:
    """Pick the step: explicit dt, then RESIL_DT, then t_f / configured steps.

    Returns:
        (number of steps, step size)

    Raises:
        ValueError: If dt is not positive or does not divide t_f
    """
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")
    if dt is None:
        dt = get_env_float(DT_ENV_VAR)
    if dt is None:
        steps = int(config_section("integrator", "steps", INTEGRATOR_STEPS))
        return steps, t_f / steps
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    steps = int(round(t_f / dt))
    if steps < 1 or abs(steps * dt - t_f) > 1e-9 * max(1.0, t_f):
        raise ValueError(f"dt={dt} does not divide t_f={t_f} into whole steps")
    return steps, t_f / steps


def _rk4(system: ControlSystem, u: InputSignal, x0: np.ndarray, t_f: float, steps: int):
    h = t_f / steps
    times = np.linspace(0.0, t_f, steps + 1)
    # Stage inputs: u at t, at t + h/2 and the left limit at t + h
    u_start = u.sample(times[:-1])
    u_mid = u.sample(times[:-1] + 0.5 * h)
    u_end = u.sample(times[1:], left=True)

    states = np.empty((steps + 1, x0.size))
    states[0] = x = x0
    rhs = system.rhs
    for k in range(steps):
        k1 = rhs(x, u_start[k])
        k2 = rhs(x + 0.5 * h * k1, u_mid[k])
        k3 = rhs(x + 0.5 * h * k2, u_mid[k])
        k4 = rhs(x + h * k3, u_end[k])
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise IntegrationError(
                f"State became non-finite at t={times[k + 1]:.6g} "
                f"(step {k + 1} of {steps}, h={h:.3g})"
            )
        states[k + 1] = x
    return Trajectory(times=times, states=states, dt=h)


def integrate(
    system: ControlSystem,
    u: InputSignal,
    x0,
    t_f: float,
    dt: Optional[float] = None,
    check_convergence: bool = False,
) -> Trajectory:
    """Integrate the system from x0 under input u over [0, t_f].

    Args:
        system: Dynamics
        u: Admissible input with one channel per column of g
        x0: Initial state
        t_f: Horizon
        dt: Step; RESIL_DT or t_f / integrator.steps when omitted
        check_convergence: Also integrate at dt/2 and require the terminal
            states to agree within integrator.convergence_tol

    Returns:
        Trajectory on the uniform grid

    Raises:
        ValueError: Bad step, wrong channel count or inadmissible input
        IntegrationError: Blow-up or failed convergence check
    """
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (system.n,):
        raise ValueError(f"x0 has shape {x0.shape}, expected ({system.n},)")
    if u.channels != system.inputs:
        raise ValueError(
            f"Input has {u.channels} channels, system expects {system.inputs}"
        )
    require_admissible(u, t_f)
    steps, h = resolve_step(t_f, dt)
    trajectory = _rk4(system, u, x0, t_f, steps)

    if check_convergence:
        tol = config_section("integrator", "convergence_tol", CONVERGENCE_TOL)
        refined = _rk4(system, u, x0, t_f, 2 * steps)
        change = float(
            np.max(np.abs(refined.terminal_state - trajectory.terminal_state))
        )
        scale = max(1.0, float(np.max(np.abs(refined.terminal_state))))
        LOG.debug("Step-doubling change %.3e at h=%.3g", change, h)
        if change > tol * scale:
            raise IntegrationError(
                f"Halving the step moved the terminal state by {change:.3e} "
                f"(tolerance {tol:g}); reduce dt"
            )
    return trajectory
