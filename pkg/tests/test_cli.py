import json

import pandas as pd
from pytest import approx, raises

from src.cli.resilience_cli import build_parser, main
from src.constants.config import MODELS_DIR
from src.constants.resilience import ExitCode


def _values(output: str) -> dict:
    return dict(line.split("=", 1) for line in output.splitlines() if "=" in line)


def test_energy_command(capsys):
    assert main(["energy", "underwater_robot"]) == ExitCode.OK
    values = _values(capsys.readouterr().out)
    assert values["model"] == "underwater_robot"
    assert values["e_nominal.tag"] == "exact"
    assert float(values["e_malfunctioning"]) == approx(18.1)
    assert values["worst_sign"] == "1"


def test_energy_command_with_final_time(capsys):
    assert main(["energy", str(MODELS_DIR / "admire_wind.json"), "--tf", "0.5"]) == 0
    values = _values(capsys.readouterr().out)
    assert float(values["t_f"]) == 0.5
    assert values["e_worst_total.tag"] == "approximate"
    assert float(values["v_bar"]) > 0


def test_resilience_command(capsys):
    assert main(["resilience", "admire_linear", "--R", "5"]) == ExitCode.OK
    values = _values(capsys.readouterr().out)
    assert float(values["R"]) == 5.0
    assert float(values["r_a_bound"]) > 0
    assert values["r_a_bound.class"] == "approximate_upper_bound"


def test_opt_tf_command(capsys):
    assert main(["opt-tf", "underwater_robot", "--uuc", "1"]) == ExitCode.OK
    values = _values(capsys.readouterr().out)
    assert float(values["t_f_opt"]) == approx(1.0)


def test_opt_tf_rejects_inadmissible_input():
    assert main(["opt-tf", "underwater_robot", "--uuc", "2"]) == ExitCode.INPUT_ERROR


def test_missing_model_is_an_input_error(tmp_path):
    assert main(["energy", str(tmp_path / "nope.json")]) == ExitCode.INPUT_ERROR


def test_invalid_model_is_an_input_error(tmp_path):
    with open(MODELS_DIR / "underwater_robot.json") as f:
        definition = json.load(f)
    definition["extra"] = 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(definition))
    assert main(["energy", str(path)]) == ExitCode.INPUT_ERROR


def test_sweep_command_writes_csv(tmp_path):
    out = tmp_path / "robot.csv"
    argv = [
        "sweep",
        "underwater_robot",
        "--r-min",
        "100",
        "--r-max",
        "10000",
        "--points",
        "4",
        "--tf",
        "10",
        "--out",
        str(out),
    ]
    assert main(argv) == ExitCode.OK
    df = pd.read_csv(out)
    assert len(df) == 4
    assert "total_worst_case" in df.columns


def test_sweep_needs_two_points():
    with raises(SystemExit) as exc:
        main(["sweep", "underwater_robot", "--r-min", "1", "--r-max", "2", "--points", "1"])
    assert exc.value.code == 2


def test_sweep_needs_ordered_range():
    with raises(SystemExit) as exc:
        main(["sweep", "underwater_robot", "--r-min", "5", "--r-max", "2"])
    assert exc.value.code == 2


def test_validate_single_suite(capsys):
    assert main(["validate", "--suite", "achievability", "--seed", "1"]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "PASS [achievability]" in out
    assert "FAIL" not in out


def test_validate_writes_results_csv(tmp_path, capsys):
    out = tmp_path / "checks" / "validation.csv"
    argv = ["validate", "--suite", "achievability", "--seed", "1", "--out", str(out)]
    assert main(argv) == ExitCode.OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["suite", "check", "passed", "detail"]
    assert (frame["suite"] == "achievability").all()
    assert frame["passed"].all()
    assert len(frame) == capsys.readouterr().out.count("PASS [achievability]")


def test_log_file_option(tmp_path, capsys):
    log_file = tmp_path / "run.log"
    assert main(["--log-file", str(log_file), "energy", "underwater_robot"]) == 0
    assert "Loaded model underwater_robot" in log_file.read_text()


def test_parser_requires_a_command():
    with raises(SystemExit):
        build_parser().parse_args([])
