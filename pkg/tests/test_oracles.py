import numpy as np
from pytest import approx, mark, raises

from src.cli.validate import brute_force_interval
from src.driftless import nominal_energy_driftless, optimal_final_time
from src.simulate import (
    OracleError,
    brute_force_constant_min,
    brute_force_opt_tf,
    linear_reference_terminal,
    sampled_energy,
)
from src.model.signals import ConstantSignal

ROBOT_B = np.array([[2.0, 1.0, 1.0], [0.2, -1.0, 1.0]])


def test_identity_grid_minimum():
    # u = (-0.49, 0) is the cheapest grid point within 0.0201 of the target
    value = brute_force_constant_min(
        np.eye(2), [1.0, 0.0], 2.0, 0.01, tolerance=0.0201
    )
    assert value == approx(0.4802, rel=1e-9)


@mark.parametrize("grid_step", [0.01, 0.05])
def test_grid_minimum_within_interval(grid_step):
    B, x_tilde, t_f = np.eye(2), np.array([1.0, 0.0]), 2.0
    lower, upper = brute_force_interval(B, x_tilde, t_f, grid_step)
    value = brute_force_constant_min(B, x_tilde, t_f, grid_step)
    assert lower <= value <= upper
    assert lower <= nominal_energy_driftless(B, x_tilde, t_f) <= upper


@mark.parametrize(
    "B, u_star, t_f",
    [
        (np.eye(2), [-0.5, 0.0], 2.0),
        # B^T (0.05, 0.05), a grid point in the row space of B
        (ROBOT_B, [0.11, 0.0, 0.1], 10.0),
    ],
)
def test_tight_tolerance_matches_closed_form(B, u_star, t_f):
    x_tilde = -t_f * B @ np.array(u_star)
    closed = nominal_energy_driftless(B, x_tilde, t_f)
    assert closed == approx(t_f * np.sum(np.square(u_star)))
    value = brute_force_constant_min(B, x_tilde, t_f, 0.01, tolerance=1e-9)
    assert value == approx(closed, rel=1e-9)


def test_single_input_grid():
    value = brute_force_constant_min([[1.0]], [0.5], 1.0, 0.25, tolerance=1e-12)
    assert value == approx(0.25)


def test_unreachable_target():
    with raises(OracleError, match="unreachable"):
        brute_force_constant_min(np.eye(2), [5.0, 0.0], 1.0, 0.1)


def test_too_many_inputs():
    with raises(ValueError, match="at most 3"):
        brute_force_constant_min(np.ones((2, 4)), [1.0, 0.0], 1.0, 0.1)


@mark.parametrize("u_uc", [1.0, 0.5, -0.8])
def test_golden_search_matches_closed_form(u_uc):
    B_c, B_uc = ROBOT_B[:, :2], ROBOT_B[:, 2:]
    x_tilde = [1.0, 1.0]
    closed = optimal_final_time(B_c, B_uc, x_tilde, [u_uc])
    assert brute_force_opt_tf(B_c, B_uc, x_tilde, [u_uc]) == approx(closed, rel=1e-6)


def test_golden_search_flat_objective():
    with raises(OracleError, match="flat"):
        brute_force_opt_tf(np.eye(2), np.zeros((2, 1)), [1.0, 0.0], [1.0])


def test_golden_search_outside_window():
    B_c, B_uc = np.eye(1), np.array([[1e-6]])
    with raises(OracleError, match="outside window"):
        brute_force_opt_tf(B_c, B_uc, [10.0], [1.0])


def test_sampled_energy_of_constant():
    assert sampled_energy(ConstantSignal([0.5, 0.5]), 2.0) == approx(1.0)
    with raises(ValueError):
        sampled_energy(ConstantSignal([0.5]), 1.0, samples=2)


def test_matrix_exponential_reference():
    terminal = linear_reference_terminal([[-1.0]], [1.0], 1.0)
    assert terminal[0] == approx(np.exp(-1.0))
    drift_free = linear_reference_terminal(
        np.zeros((2, 2)), [1.0, 1.0], 3.0, ROBOT_B, [0.1, 0.2, -0.3]
    )
    np.testing.assert_allclose(
        drift_free, [1.0, 1.0] + 3.0 * ROBOT_B @ [0.1, 0.2, -0.3], rtol=1e-12
    )
