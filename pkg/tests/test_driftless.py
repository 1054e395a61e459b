import logging

import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import floats
from pytest import approx, fixture, mark, raises

from src.driftless import (
    cross_term,
    driftless_energies,
    feasibility_driftless,
    least_squares_control,
    malfunction_metric,
    malfunctioning_energy_driftless,
    nominal_energy_driftless,
    optimal_final_time,
    resilience_bound_driftless,
    total_energy_driftless,
    uncontrolled_gain_bounded,
    uncontrolled_spectral_term,
    worst_case_total_bound_driftless,
    worst_case_total_exact_1act,
)
from src.model.signals import InadmissibleSignalError, SinusoidSignal

# Underwater robot: thrusters 0 and 1 controlled, thruster 2 lost
ROBOT_B = np.array([[2.0, 1.0, 1.0], [0.2, -1.0, 1.0]])
ROBOT_X_TILDE = np.array([1.0, 1.0])
ROBOT_T_F = 10.0


@fixture
def robot():
    return ROBOT_B, ROBOT_B[:, :2], ROBOT_B[:, 2:]


def test_nominal_energy_identity():
    assert nominal_energy_driftless(np.eye(2), [1.0, 0.0], 2.0) == approx(0.5)


def test_least_squares_control_reaches_target():
    u = least_squares_control(ROBOT_B, ROBOT_X_TILDE, ROBOT_T_F)
    np.testing.assert_allclose(ROBOT_X_TILDE + ROBOT_T_F * ROBOT_B @ u, 0.0, atol=1e-12)
    assert ROBOT_T_F * float(u @ u) == approx(
        nominal_energy_driftless(ROBOT_B, ROBOT_X_TILDE, ROBOT_T_F)
    )


@mark.parametrize("t_f, expected", [(3.0, True), (2.9, False), (5.0, True)])
def test_feasibility_threshold(t_f, expected):
    assert feasibility_driftless(np.eye(2), [3.0, 0.0], t_f) is expected


def test_robot_nominal_energy(robot):
    B, _, _ = robot
    # x_tilde^T (B B^T)^-1 x_tilde / t_f with B B^T = [[6, 0.4], [0.4, 2.04]]
    expected = (2.04 - 0.8 + 6.0) / (6.0 * 2.04 - 0.16) / ROBOT_T_F
    assert nominal_energy_driftless(B, ROBOT_X_TILDE, ROBOT_T_F) == approx(expected)


def test_robot_malfunctioning_energy(robot):
    _, B_c, B_uc = robot
    # B_c^-1 x_tilde = B_c^-1 B_uc = (10/11, -9/11)
    assert malfunctioning_energy_driftless(
        B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F, [0.0]
    ) == approx(181 / 1210)
    assert malfunctioning_energy_driftless(
        B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F, [1.0]
    ) == approx(18.1)
    assert malfunctioning_energy_driftless(
        B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F, [-1.0]
    ) == approx(81 * 181 / 1210)


def test_robot_worst_case_total(robot):
    _, B_c, B_uc = robot
    worst = worst_case_total_exact_1act(B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F)
    assert worst.worst_sign == 1
    assert not worst.degenerate
    assert worst.value == approx(181 / 1210 + ROBOT_T_F * 3.0 + 2 * 181 / 121)
    bound = worst_case_total_bound_driftless(B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F)
    assert bound == approx(worst.value)


def test_robot_optimal_final_time(robot):
    _, B_c, B_uc = robot
    assert optimal_final_time(B_c, B_uc, ROBOT_X_TILDE, [1.0]) == approx(1.0)
    assert optimal_final_time(B_c, B_uc, ROBOT_X_TILDE, [0.5]) == approx(2.0)


def test_robot_gain_is_bounded(robot):
    _, B_c, B_uc = robot
    assert uncontrolled_gain_bounded(B_c, B_uc)
    assert not uncontrolled_gain_bounded(0.1 * np.eye(2), B_uc)


def test_scalar_resilience_bound():
    B = np.array([[1.0, 1.0]])
    assert resilience_bound_driftless(B, B[:, :1], B[:, 1:], 1.0, 1.0) == approx(4.5)


@mark.parametrize("x, sign", [(1.0, 1), (-1.0, -1)])
def test_scalar_worst_sign_follows_cross_term(x, sign):
    one = np.array([[1.0]])
    worst = worst_case_total_exact_1act(one, one, [x], 1.0)
    assert worst.worst_sign == sign
    assert worst.value == approx(1.0 + 2.0 + 2.0)
    attained = malfunctioning_energy_driftless(one, one, [x], 1.0, [sign]) + 1.0
    assert attained == approx(worst.value)


def test_zero_cross_term_is_degenerate():
    one = np.array([[1.0]])
    worst = worst_case_total_exact_1act(one, one, [0.0], 1.0)
    assert worst.degenerate
    assert worst.worst_sign == 1
    assert worst.value == approx(2.0)


def test_closed_forms_need_one_uncontrolled_input():
    B_c, B_uc = np.eye(2), np.eye(2)
    B = np.hstack([B_c, B_uc])
    with raises(ValueError, match="exactly one"):
        worst_case_total_exact_1act(B_c, B_uc, [1.0, 0.0], 1.0)
    with raises(ValueError, match="exactly one"):
        resilience_bound_driftless(B, B_c, B_uc, 1.0, 1.0)


def test_optimal_final_time_invisible_drift():
    with raises(ValueError, match="invisible"):
        optimal_final_time(np.eye(2), np.zeros((2, 1)), [1.0, 0.0], [1.0])
    with raises(ValueError, match="Zero displacement"):
        optimal_final_time(np.eye(2), np.ones((2, 1)), [0.0, 0.0], [1.0])


def test_uncontrolled_spectral_term():
    assert uncontrolled_spectral_term([[3.0], [4.0]]) == approx(25.0)
    assert uncontrolled_spectral_term(np.diag([2.0, 1.0])) == approx(5.0)


def test_malfunction_metric_is_inverse_gram(robot):
    _, B_c, _ = robot
    np.testing.assert_allclose(
        malfunction_metric(B_c), np.linalg.inv(B_c @ B_c.T), atol=1e-12
    )


def test_cross_term(robot):
    _, B_c, B_uc = robot
    np.testing.assert_allclose(
        cross_term(B_c, B_uc, ROBOT_X_TILDE), [181 / 121], rtol=1e-12
    )


def test_uncontrolled_mean_outside_box():
    one = np.array([[1.0]])
    with raises(InadmissibleSignalError):
        malfunctioning_energy_driftless(one, one, [1.0], 1.0, [1.5])


def test_total_energy_adds_signal_energy(robot):
    _, B_c, B_uc = robot
    u = SinusoidSignal([1.0], [2 * np.pi], [0.0])
    total = total_energy_driftless(B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F, u)
    assert total == approx(181 / 1210 + ROBOT_T_F / 2, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    floats(-50.0, 50.0),
    floats(-50.0, 50.0),
    floats(-1.0, 1.0),
    floats(0.1, 20.0),
)
def test_losing_an_actuator_never_saves_energy(x1, x2, u, t_f):
    B, B_c, B_uc = ROBOT_B, ROBOT_B[:, :2], ROBOT_B[:, 2:]
    x_tilde = [x1, x2]
    total = malfunctioning_energy_driftless(B_c, B_uc, x_tilde, t_f, [u]) + t_f * u**2
    nominal = nominal_energy_driftless(B, x_tilde, t_f)
    assert total >= nominal - 1e-9 * max(1.0, nominal)


@settings(max_examples=200, deadline=None)
@given(floats(-100.0, 100.0), floats(-100.0, 100.0), floats(-1.0, 1.0))
def test_resilience_bound_dominates_gap(x1, x2, u):
    B, B_c, B_uc = ROBOT_B, ROBOT_B[:, :2], ROBOT_B[:, 2:]
    x_tilde = np.array([x1, x2])
    R = float(np.linalg.norm(x_tilde))
    total = (
        malfunctioning_energy_driftless(B_c, B_uc, x_tilde, ROBOT_T_F, [u])
        + ROBOT_T_F * u**2
    )
    gap = total - nominal_energy_driftless(B, x_tilde, ROBOT_T_F)
    bound = resilience_bound_driftless(B, B_c, B_uc, ROBOT_T_F, R)
    assert gap <= bound + 1e-9 * max(1.0, bound)


def test_driftless_energies_bundle(robot):
    B, B_c, B_uc = robot
    energies = driftless_energies(B, B_c, B_uc, ROBOT_X_TILDE, ROBOT_T_F)
    assert energies.feasible
    assert energies.worst_uuc_sign == 1
    assert energies.e_malf == approx(18.1)
    assert energies.e_worst_total_exact_1act == approx(energies.e_worst_total_bound)
    np.testing.assert_array_equal(energies.u_uc_mean, [1.0])


def test_driftless_energies_warns_when_infeasible(robot, caplog):
    B, B_c, B_uc = robot
    with caplog.at_level(logging.WARNING, logger="resilience"):
        energies = driftless_energies(B, B_c, B_uc, [100.0, 100.0], 1.0)
    assert not energies.feasible
    assert energies.e_nominal > 0
    assert "infeasible" in caplog.text
