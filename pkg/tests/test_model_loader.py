import json

import numpy as np
from pytest import approx, fixture, mark, raises

from src.constants.config import MODELS_DIR
from src.model import (
    ActuatorPartition,
    ModelValidationError,
    ReachTask,
    SystemKind,
    driftless_system,
    load_model,
    model_from_dict,
    verify_lipschitz,
    wind_system,
)

ADMIRE_A = [[-0.9967, 0.0, 0.6176], [0.0, -0.5057, 0.0], [-0.0939, 0.0, -0.2127]]
ADMIRE_B = [
    [0.0, -4.2423, 4.2423, 1.4871],
    [1.6532, -1.2735, -1.2735, 0.0024],
    [0.0, -0.2805, 0.2805, -0.8823],
]


@fixture
def robot_definition():
    with open(MODELS_DIR / "underwater_robot.json") as f:
        return json.load(f)


def test_load_bundled_model_by_name():
    system, partition, task = load_model("underwater_robot")
    assert system.kind == SystemKind.DRIFTLESS
    assert system.name == "underwater_robot"
    assert (system.n, system.m, system.p) == (2, 2, 1)
    np.testing.assert_array_equal(partition.B_c, [[2.0, 1.0], [0.2, -1.0]])
    np.testing.assert_array_equal(partition.B_uc, [[1.0], [1.0]])
    np.testing.assert_array_equal(task.x_tilde, [1.0, 1.0])
    assert task.t_f == 10.0
    assert task.R == 100.0


@mark.parametrize(
    "name, kind, lipschitz_f",
    [
        ("admire_linear", SystemKind.LINEAR, 1.6143),
        ("admire_wind_c05", SystemKind.NONLINEAR, 2.1143),
        ("admire_wind", SystemKind.NONLINEAR, 2.6143),
        ("admire_wind_c2", SystemKind.NONLINEAR, 3.6143),
    ],
)
def test_admire_variants(name, kind, lipschitz_f):
    system, partition, task = load_model(MODELS_DIR / f"{name}.json")
    assert system.kind == kind
    assert system.lipschitz_f == approx(lipschitz_f)
    assert partition.uncontrolled_indices == (0,)
    assert partition.B_c.shape == (3, 3)
    assert task.radius == approx(1.0)


def test_unknown_field_is_rejected(robot_definition):
    robot_definition["colour"] = "yellow"
    with raises(ModelValidationError, match="Unknown field"):
        model_from_dict(robot_definition)


def test_unknown_task_field_is_rejected(robot_definition):
    robot_definition["task"]["deadline"] = 3
    with raises(ModelValidationError, match="task"):
        model_from_dict(robot_definition)


def test_rank_deficient_controlled_block(robot_definition):
    robot_definition["B"] = [[1.0, 0.0, 1.0], [0.0, 0.0, 1.0]]
    with raises(ModelValidationError, match="B_c is rank deficient"):
        model_from_dict(robot_definition)


def test_every_input_uncontrolled_is_rejected(robot_definition):
    robot_definition["uncontrolled_indices"] = [0, 1, 2]
    with raises(ModelValidationError):
        model_from_dict(robot_definition)


def test_duplicate_indices_are_rejected(robot_definition):
    robot_definition["uncontrolled_indices"] = [2, 2]
    with raises(ModelValidationError, match="Duplicate"):
        model_from_dict(robot_definition)


def test_driftless_requires_zero_lipschitz(robot_definition):
    robot_definition["D_f"] = 1.0
    with raises(ModelValidationError, match="D_f = D_g = 0"):
        model_from_dict(robot_definition)


def test_radius_must_cover_task(robot_definition):
    robot_definition["task"]["R"] = 1.0
    with raises(ModelValidationError, match="exceeds R"):
        model_from_dict(robot_definition)


@fixture
def wind_definition():
    with open(MODELS_DIR / "admire_wind.json") as f:
        return json.load(f)


@mark.parametrize(
    "field, value, message",
    [
        ("D_f", float("nan"), "'D_f' must be finite"),
        ("D_f", float("inf"), "'D_f' must be finite"),
        ("D_f", -1.0, "non-negative"),
        ("D_f", "2.6", "'D_f' must be a number"),
        ("D_g", float("nan"), "'D_g' must be finite"),
    ],
)
def test_bad_lipschitz_constant_is_rejected(wind_definition, field, value, message):
    wind_definition[field] = value
    with raises(ModelValidationError, match=message):
        model_from_dict(wind_definition)


def test_non_finite_wind_amplitude_is_rejected(wind_definition):
    wind_definition["wind"]["amplitude"] = float("inf")
    with raises(ModelValidationError, match="'amplitude' must be finite"):
        model_from_dict(wind_definition)


@mark.parametrize(
    "field, value, message",
    [
        ("x0", [float("nan"), 1.0], "task.x0 must be finite"),
        ("x0", [float("inf"), 1.0], "task.x0 must be finite"),
        ("x_tg", [0.0, float("-inf")], "task.x_tg must be finite"),
        ("x0", ["one", 1.0], "task.x0 must be a list of numbers"),
        ("x0", [1.0, 1.0, 1.0], "task.x0"),
        ("t_f", float("inf"), "'t_f' must be finite"),
        ("t_f", float("nan"), "'t_f' must be finite"),
        ("t_f", 0.0, "t_f must be positive"),
        ("t_f", "10", "'t_f' must be a number"),
        ("R", float("nan"), "'R' must be finite"),
        ("R", -1.0, "R must be non-negative"),
        ("R", 1.0, "exceeds R"),
    ],
)
def test_bad_task_field_is_rejected(robot_definition, field, value, message):
    robot_definition["task"][field] = value
    with raises(ModelValidationError, match=message):
        model_from_dict(robot_definition)


@mark.parametrize(
    "field, value",
    [("D_f", float("nan")), ("t_f", float("inf")), ("x0", [float("nan"), 1.0])],
)
def test_non_finite_values_in_json_file_are_rejected(
    tmp_path, robot_definition, wind_definition, field, value
):
    if field == "D_f":
        definition = wind_definition
        definition[field] = value
    else:
        definition = robot_definition
        definition["task"][field] = value
    path = tmp_path / "non_finite.json"
    # json writes NaN and Infinity literals, which json.load reads back
    path.write_text(json.dumps(definition))
    with raises(ModelValidationError, match="finite"):
        load_model(path)


def test_radius_below_task_distance_in_json_file(tmp_path, robot_definition):
    robot_definition["task"]["R"] = 1.4
    path = tmp_path / "tight_radius.json"
    path.write_text(json.dumps(robot_definition))
    with raises(ModelValidationError, match="exceeds R = 1.4"):
        load_model(path)


def test_understated_lipschitz_constant_is_caught():
    definition = {
        "kind": "linear",
        "A": ADMIRE_A,
        "B": ADMIRE_B,
        "D_f": 0.1,
        "D_g": 0.0,
        "uncontrolled_indices": [0],
        "task": {"x0": [0.6, 0.0, 0.8], "x_tg": [0.0, 0.0, 0.0], "t_f": 1.0},
    }
    with raises(ModelValidationError, match="Lipschitz"):
        model_from_dict(definition)


def test_missing_file_raises_os_error(tmp_path):
    with raises(OSError):
        load_model(tmp_path / "missing.json")


def test_malformed_json_raises_value_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with raises(ValueError):
        load_model(path)


def test_name_defaults_to_file_stem(tmp_path, robot_definition):
    del robot_definition["name"]
    path = tmp_path / "robot_copy.json"
    path.write_text(json.dumps(robot_definition))
    assert load_model(path).system.name == "robot_copy"


def test_wind_lipschitz_constant_holds():
    system = wind_system(ADMIRE_A, ADMIRE_B, p=1, family="admire_wind", amplitude=2.0)
    assert system.lipschitz_f == approx(1.6143 + 2.0)
    check = verify_lipschitz(system, samples=2000, seed=1)
    assert check.passed
    assert check.ratio_f <= system.lipschitz_f
    assert check.ratio_g == 0.0


def test_unknown_wind_family():
    with raises(ModelValidationError, match="Unknown wind family"):
        wind_system(ADMIRE_A, ADMIRE_B, p=1, family="gusts", amplitude=1.0)


def test_partition_at_state():
    system = driftless_system([[2.0, 1.0, 1.0], [0.2, -1.0, 1.0]], p=1)
    partition = ActuatorPartition.at_state(system, [0.0, 0.0], [0])
    assert (partition.m, partition.p) == (2, 1)
    np.testing.assert_array_equal(partition.B_uc, [[2.0], [0.2]])
    np.testing.assert_array_equal(partition.f0, [0.0, 0.0])
    with raises(ModelValidationError, match="out of range"):
        ActuatorPartition.at_state(system, [0.0, 0.0], [3])


def test_reach_task_validation():
    task = ReachTask(x0=[3.0, 4.0], x_tg=[0.0, 0.0], t_f=1.0)
    assert task.radius == approx(5.0)
    with raises(ModelValidationError, match="t_f"):
        ReachTask(x0=[0.0], x_tg=[0.0], t_f=0.0)
    with raises(ModelValidationError, match="equal length"):
        ReachTask(x0=[0.0, 1.0], x_tg=[0.0], t_f=1.0)
