"""Command-line front end for the resilience toolkit.

Run from the repository root:

    python -m src.cli.resilience_cli energy underwater_robot
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from src.common.utils import LOG, mkdir_p
from src.constants.config import OUTPUT_DIR
from src.constants.logging_config import setup_file_logging
from src.constants.resilience import ExitCode
from src.driftless import optimal_final_time
from src.model.loader import load_model
from src.model.types import SystemKind
from src.cli.reports import build_report
from src.cli.sweep import run_sweep, write_sweep_csv
from src.cli.validate import SUITES, run_validation


def cmd_energy(args) -> int:
    report = build_report(load_model(args.model), t_f=args.tf)
    for line in report.to_lines():
        print(line)
    return ExitCode.OK


def cmd_resilience(args) -> int:
    report = build_report(load_model(args.model), t_f=args.tf, R=args.R)
    print(f"model={report.model_name}")
    print(f"t_f={report.t_f:.17g}")
    print(f"R={report.R:.17g}")
    print(f"v_bar={report.v_bar:.17g}")
    print(f"r_a_bound={report.r_a_bound.value:.17g}")
    print(f"r_a_bound.tag={report.r_a_bound.exactness}")
    print(f"r_a_bound.class={report.r_a_bound.expression}")
    return ExitCode.OK


def cmd_opt_tf(args) -> int:
    system, partition, task = load_model(args.model)
    u_uc_mean = np.full(partition.p, args.uuc)
    t_star = optimal_final_time(partition.B_c, partition.B_uc, task.x_tilde, u_uc_mean)
    if system.kind != SystemKind.DRIFTLESS:
        LOG.warning(
            "%s is not driftless; t_f* is for its driftless surrogate", system.name
        )
    print(f"model={system.name}")
    print(f"u_uc={args.uuc:.17g}")
    print(f"t_f_opt={t_star:.17g}")
    return ExitCode.OK


def cmd_sweep(args) -> int:
    bundle = load_model(args.model)
    df = run_sweep(bundle, args.r_min, args.r_max, args.points, t_f=args.tf)
    out = args.out or OUTPUT_DIR / f"{bundle.system.name}_sweep.csv"
    write_sweep_csv(df, out)
    return ExitCode.OK


def cmd_validate(args) -> int:
    summary = run_validation(level=args.level, seed=args.seed, suites=args.suite)
    for result in summary.results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} [{result.suite}] {result.name}: {result.detail}")
    if args.out:
        out = Path(args.out)
        if out.parent != Path(""):
            mkdir_p(out.parent)
        summary.to_frame().to_csv(out, index=False)
        LOG.info("Wrote %d check results to %s", len(summary.results), out)
    if not summary.passed:
        LOG.error("%d check(s) failed", len(summary.failed))
        for result in summary.failed:
            LOG.error("  [%s] %s: %s", result.suite, result.name, result.detail)
        return ExitCode.INVARIANT_FAILURE
    LOG.info(
        "All %d checks passed (level=%s, seed=%s)",
        len(summary.results),
        summary.level,
        summary.seed,
    )
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Energetic resilience of control systems losing an actuator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Energies for a bundled model (name or path)
  python -m src.cli.resilience_cli energy underwater_robot
  python -m src.cli.resilience_cli energy models/admire_wind.json --tf 2

  # Resilience bound at a given distance
  python -m src.cli.resilience_cli resilience admire_linear --R 5

  # Final time minimizing the malfunctioning energy
  python -m src.cli.resilience_cli opt-tf underwater_robot --uuc 1

  # Sweep R and write a CSV
  python -m src.cli.resilience_cli sweep underwater_robot --r-min 100 --r-max 10000 --points 20 --tf 10 --out data/sweeps/robot.csv

  # Invariant suites
  python -m src.cli.resilience_cli validate --level full --seed 3
  python -m src.cli.resilience_cli validate --suite dominance --out data/validation.csv
        """,
    )
    parser.add_argument(
        "--log-file",
        help="Also write logs to this file (rotated at 5 MB)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    energy = sub.add_parser("energy", help="Print every energy for the model's task")
    energy.add_argument("model", help="Model JSON file or bundled model name")
    energy.add_argument("--tf", type=float, help="Override the task's final time")
    energy.set_defaults(func=cmd_energy)

    resilience = sub.add_parser("resilience", help="Print the resilience bound")
    resilience.add_argument("model", help="Model JSON file or bundled model name")
    resilience.add_argument(
        "--R", type=float, required=True, help="Distance bound on ||x0 - x_tg||_2"
    )
    resilience.add_argument("--tf", type=float, help="Override the task's final time")
    resilience.set_defaults(func=cmd_resilience)

    opt_tf = sub.add_parser("opt-tf", help="Final time minimizing E_M")
    opt_tf.add_argument("model", help="Model JSON file or bundled model name")
    opt_tf.add_argument(
        "--uuc",
        type=float,
        required=True,
        help="Constant uncontrolled input applied to every lost actuator, in [-1, 1]",
    )
    opt_tf.set_defaults(func=cmd_opt_tf)

    sweep = sub.add_parser("sweep", help="Sweep R on a log grid and write a CSV")
    sweep.add_argument("model", help="Model JSON file or bundled model name")
    sweep.add_argument("--r-min", type=float, required=True, help="Smallest R (> 0)")
    sweep.add_argument("--r-max", type=float, required=True, help="Largest R")
    sweep.add_argument(
        "--points", type=int, default=20, help="Number of R values (default: 20)"
    )
    sweep.add_argument("--tf", type=float, help="Final time (default: the task's)")
    sweep.add_argument(
        "--out",
        type=Path,
        help="Output CSV (default: data/sweeps/<model>_sweep.csv)",
    )
    sweep.set_defaults(func=cmd_sweep)

    validate = sub.add_parser("validate", help="Run the invariant suites")
    validate.add_argument("--seed", type=int, help="Random seed (default: from config)")
    validate.add_argument(
        "--level",
        choices=["quick", "full"],
        default="quick",
        help="Sample counts (default: quick)",
    )
    validate.add_argument(
        "--suite",
        action="append",
        choices=list(SUITES),
        help="Run only this suite (repeatable)",
    )
    validate.add_argument("--out", help="Also write the check results to this CSV")
    validate.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "sweep":
        if args.points < 2:
            parser.error("--points must be at least 2")
        if args.r_min <= 0 or args.r_max < args.r_min:
            parser.error("need 0 < --r-min <= --r-max")

    file_handler = setup_file_logging(args.log_file) if args.log_file else None
    try:
        return int(args.func(args))
    except (ValueError, OSError) as e:
        LOG.error("%s: %s", args.command, e)
        return ExitCode.INPUT_ERROR
    except RuntimeError as e:
        LOG.error("%s failed: %s", args.command, e)
        return ExitCode.INVARIANT_FAILURE
    finally:
        if file_handler is not None:
            LOG.removeHandler(file_handler)
            file_handler.close()


if __name__ == "__main__":
    sys.exit(main())
