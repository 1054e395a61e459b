import numpy as np
from pytest import approx, mark, raises

from src.constants.resilience import DT_ENV_VAR
from src.model import (
    ConstantSignal,
    InadmissibleSignalError,
    PiecewiseConstantSignal,
    driftless_system,
    linear_system,
)
from src.simulate import (
    IntegrationError,
    integrate,
    linear_reference_terminal,
    resolve_step,
)

ROBOT_B = np.array([[2.0, 1.0, 1.0], [0.2, -1.0, 1.0]])
OSCILLATOR_A = np.array([[0.0, 1.0], [-4.0, 0.0]])


def test_constant_input_on_driftless_system_is_exact():
    system = driftless_system(ROBOT_B, p=1)
    u = ConstantSignal([0.3, -0.7, 1.0])
    trajectory = integrate(system, u, [1.0, 1.0], 10.0)
    expected = np.array([1.0, 1.0]) + 10.0 * ROBOT_B @ u.value
    np.testing.assert_allclose(trajectory.terminal_state, expected, rtol=1e-12)
    assert trajectory.states.shape == (1001, 2)


def test_steps_at_breakpoints_use_left_limits():
    system = driftless_system(ROBOT_B, p=1)
    u = PiecewiseConstantSignal([0.5], [[1.0, 1.0, -1.0], [-1.0, 0.5, 0.0]])
    terminal = integrate(system, u, [0.0, 0.0], 1.0, dt=0.01).terminal_state
    expected = ROBOT_B @ (0.5 * u.values[0] + 0.5 * u.values[1])
    np.testing.assert_allclose(terminal, expected, atol=1e-12)


def test_linear_system_matches_matrix_exponential():
    system = linear_system(OSCILLATOR_A, np.eye(2), p=1)
    zero = ConstantSignal(np.zeros(2))
    terminal = integrate(system, zero, [1.0, 0.0], 1.0, dt=1e-3).terminal_state
    reference = linear_reference_terminal(OSCILLATOR_A, [1.0, 0.0], 1.0)
    np.testing.assert_allclose(reference, [np.cos(2.0), -2.0 * np.sin(2.0)])
    assert np.max(np.abs(terminal - reference)) <= 1e-8


def test_forced_linear_system_matches_matrix_exponential():
    B = np.eye(2)
    system = linear_system(OSCILLATOR_A, B, p=1)
    u = ConstantSignal([0.5, -0.25])
    terminal = integrate(system, u, [0.0, 1.0], 2.0, dt=1e-3).terminal_state
    reference = linear_reference_terminal(OSCILLATOR_A, [0.0, 1.0], 2.0, B, u.value)
    assert np.max(np.abs(terminal - reference)) <= 1e-8


def test_fourth_order_convergence():
    system = linear_system(OSCILLATOR_A, np.eye(2), p=1)
    zero = ConstantSignal(np.zeros(2))
    reference = linear_reference_terminal(OSCILLATOR_A, [1.0, 0.0], 1.0)
    steps = np.array([0.02, 0.01, 0.005])
    terminals = [
        integrate(system, zero, [1.0, 0.0], 1.0, dt=h).terminal_state for h in steps
    ]
    errors = [np.max(np.abs(terminal - reference)) for terminal in terminals]
    slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    assert slope == approx(4.0, abs=0.3)


def test_blow_up_raises():
    system = linear_system([[50.0]], [[1.0, 1.0]], p=1)
    with raises(IntegrationError, match="non-finite"):
        integrate(system, ConstantSignal([0.0, 0.0]), [1.0], 20.0, dt=0.01)


def test_convergence_check_passes_on_smooth_problem():
    system = linear_system(OSCILLATOR_A, np.eye(2), p=1)
    trajectory = integrate(
        system, ConstantSignal([0.0, 0.0]), [1.0, 0.0], 1.0, check_convergence=True
    )
    assert trajectory.dt == approx(1e-3)


@mark.parametrize("dt", [0.3, -0.1, 0.0])
def test_bad_step_is_rejected(dt):
    with raises(ValueError):
        resolve_step(1.0, dt)


def test_step_from_environment(monkeypatch):
    monkeypatch.setenv(DT_ENV_VAR, "0.25")
    assert resolve_step(1.0) == (4, 0.25)


def test_default_step_from_config(monkeypatch):
    monkeypatch.delenv(DT_ENV_VAR, raising=False)
    steps, h = resolve_step(2.0)
    assert steps == 1000
    assert h == approx(2e-3)


def test_channel_count_must_match():
    system = driftless_system(ROBOT_B, p=1)
    with raises(ValueError, match="channels"):
        integrate(system, ConstantSignal([0.1]), [0.0, 0.0], 1.0)


def test_inadmissible_input_is_rejected():
    system = driftless_system(ROBOT_B, p=1)
    with raises(InadmissibleSignalError):
        integrate(system, ConstantSignal([0.1, 2.0, 0.0]), [0.0, 0.0], 1.0)
