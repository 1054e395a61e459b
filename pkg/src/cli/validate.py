"""Invariant suites run by the `validate` command.

Each suite returns CheckResults instead of raising, so one failing
invariant does not hide the others. Random instances come from a single
seeded numpy Generator and are identical across runs.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.common.utils import LOG, config_section
from src.constants.config import MODELS_DIR
from src.constants.sweep_columns import SweepColumns
from src.driftless import (
    malfunctioning_energy_driftless,
    nominal_energy_driftless,
    optimal_final_time,
    resilience_bound_driftless,
    total_energy_driftless,
    worst_case_total_bound_driftless,
    worst_case_total_exact_1act,
)
from src.model.loader import ModelBundle, load_model
from src.model.signals import (
    ConstantSignal,
    ExponentialDecaySignal,
    InputSignal,
    PiecewiseConstantSignal,
    SinusoidSignal,
    is_admissible,
)
from src.model.types import ActuatorPartition, SystemKind
from src.nonlinear import (
    empirical_v,
    feasibility_malfunctioning,
    feasibility_nominal,
    malfunctioning_energy_approx,
    nominal_energy_approx,
    resilience_bound_1act,
    v_bound,
    v_bound_at_partition,
    worst_case_total_1act,
    worst_case_total_bound,
)
from src.numerics import induced_norm, penrose_residuals, pinv, vec_norm
from src.simulate import (
    OracleError,
    brute_force_constant_min,
    brute_force_opt_tf,
    enumerate_feasibility_malfunctioning,
    enumerate_feasibility_nominal,
    integrate,
    linear_reference_terminal,
    sampled_energy,
    signal_sweep,
)
from src.cli.sweep import run_sweep, signal_total_columns

LEVEL_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "quick": {
        "random_instances": 20,
        "random_signals": 100,
        "gronwall_final_times": [0.1, 1.0],
        "gronwall_steps": 200,
        "convergence_gate": False,
        "brute_force_grid_step": 0.05,
        "sweep_points": 5,
    },
    "full": {
        "random_instances": 100,
        "random_signals": 1000,
        "gronwall_final_times": [0.1, 0.5, 1.0],
        "gronwall_steps": 1000,
        "convergence_gate": True,
        "brute_force_grid_step": 0.01,
        "sweep_points": 15,
    },
}

# Allowed excess of a bound over what it bounds, relative to max(1, bound)
_DOMINANCE_TOL = 1e-9


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationSummary:
    level: str
    seed: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "suite": r.suite,
                    "check": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in self.results
            ]
        )


@dataclass
class _Context:
    rng: np.random.Generator
    settings: Dict[str, Any]
    bundles: List[ModelBundle]


def level_settings(level: str) -> Dict[str, Any]:
    if level not in LEVEL_DEFAULTS:
        raise ValueError(f"Unknown validation level '{level}'")
    configured = config_section("validation", level, {}) or {}
    return {**LEVEL_DEFAULTS[level], **configured}


def bundled_models() -> List[ModelBundle]:
    return [load_model(path) for path in sorted(MODELS_DIR.glob("*.json"))]


def _dominates(bound: float, value: float) -> bool:
    return value <= bound + _DOMINANCE_TOL * max(1.0, abs(bound))


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def random_full_row_rank(
    rng: np.random.Generator, n: int, cols: int, min_sigma: Optional[float] = None
) -> np.ndarray:
    """Gaussian n x cols matrix with smallest singular value at least min_sigma."""
    M = rng.standard_normal((n, cols))
    if min_sigma is not None:
        sigma = np.linalg.svd(M, compute_uv=False)[-1]
        if sigma < min_sigma:
            M *= min_sigma / sigma
    return M


def random_partition(rng: np.random.Generator, n: int, p: int, min_sigma=1.0):
    """(B, B_c, B_uc) with B_c full row rank and sigma_min(B_c) >= min_sigma."""
    m = n + int(rng.integers(0, 2))
    B_c = random_full_row_rank(rng, n, m, min_sigma)
    B_uc = rng.standard_normal((n, p))
    return np.hstack([B_c, B_uc]), B_c, B_uc


def random_signal(rng: np.random.Generator, channels: int, t_f: float) -> InputSignal:
    """Random admissible signal from one of the library shapes."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return ConstantSignal(rng.uniform(-1, 1, channels))
    if kind == 1:
        return SinusoidSignal(
            rng.uniform(-1, 1, channels),
            rng.uniform(0.1, 30.0, channels),
            rng.uniform(0, 2 * np.pi, channels),
        )
    if kind == 2:
        return ExponentialDecaySignal(
            rng.uniform(-1, 1, channels), rng.uniform(0.1, 10.0, channels)
        )
    pieces = int(rng.integers(1, 5))
    breakpoints = np.sort(rng.uniform(0, t_f, pieces))
    return PiecewiseConstantSignal(
        breakpoints, rng.uniform(-1, 1, (pieces + 1, channels))
    )


def _random_ball_point(rng: np.random.Generator, n: int, R: float) -> np.ndarray:
    direction = rng.standard_normal(n)
    direction /= np.linalg.norm(direction)
    return R * rng.uniform() ** (1.0 / n) * direction


def suite_penrose(ctx: _Context) -> List[CheckResult]:
    worst = 0.0
    for _ in range(ctx.settings["random_instances"]):
        rows, cols = (int(x) for x in ctx.rng.integers(1, 7, size=2))
        if ctx.rng.uniform() < 0.3:
            rank = int(ctx.rng.integers(1, min(rows, cols) + 1))
            M = ctx.rng.standard_normal((rows, rank)) @ ctx.rng.standard_normal(
                (rank, cols)
            )
        else:
            M = ctx.rng.standard_normal((rows, cols))
        worst = max(worst, max(penrose_residuals(M, pinv(M)).values()))
    return [
        CheckResult(
            "penrose",
            "four Penrose conditions on random matrices",
            worst <= 1e-8,
            f"max relative residual {worst:.3e}",
        )
    ]


def suite_jensen(ctx: _Context) -> List[CheckResult]:
    results = []
    jensen_gap = np.inf
    constant_gap = 0.0
    inadmissible = 0
    quadrature_error = 0.0
    for _ in range(ctx.settings["random_signals"]):
        t_f = float(ctx.rng.uniform(0.1, 5.0))
        u = random_signal(ctx.rng, int(ctx.rng.integers(1, 4)), t_f)
        if not is_admissible(u, t_f):
            inadmissible += 1
        mean = u.mean(t_f)
        slack = u.energy(t_f) - t_f * float(mean @ mean)
        jensen_gap = min(jensen_gap, slack)
        if isinstance(u, ConstantSignal):
            constant_gap = max(constant_gap, abs(slack))
        elif not isinstance(u, PiecewiseConstantSignal):
            analytic = u.energy(t_f)
            error = abs(sampled_energy(u, t_f) - analytic) / max(analytic, 1e-3)
            quadrature_error = max(quadrature_error, error)
    results.append(
        CheckResult(
            "jensen",
            "energy >= t_f ||mean||^2",
            jensen_gap >= -1e-9,
            f"smallest slack {jensen_gap:.3e}",
        )
    )
    results.append(
        CheckResult(
            "jensen",
            "equality for constant signals",
            constant_gap <= 1e-9,
            f"largest |slack| {constant_gap:.3e}",
        )
    )
    results.append(
        CheckResult(
            "jensen",
            "library signals admissible",
            inadmissible == 0,
            f"{inadmissible} inadmissible",
        )
    )
    results.append(
        CheckResult(
            "jensen",
            "Simpson quadrature matches analytic energy",
            quadrature_error <= 1e-6,
            f"max relative error {quadrature_error:.3e}",
        )
    )
    return results


def suite_gronwall(ctx: _Context) -> List[CheckResult]:
    results = []
    signals = signal_sweep(None, channels=1)
    steps = int(ctx.settings["gronwall_steps"])
    gate = bool(ctx.settings["convergence_gate"])
    for system, partition, task in ctx.bundles:
        for label, x0 in (("task x0", task.x0), ("x0 = x_tg", task.x_tg)):
            at_x0 = ActuatorPartition.at_state(
                system, x0, partition.uncontrolled_indices
            )
            worst_excess = -np.inf
            for t_f in ctx.settings["gronwall_final_times"]:
                v_bar = v_bound_at_partition(system, at_x0, t_f).v_bar
                for u in signals:
                    v = empirical_v(
                        system, at_x0, u, t_f, dt=t_f / steps, check_convergence=gate
                    )
                    worst_excess = max(worst_excess, vec_norm(v, np.inf) - v_bar)
            results.append(
                CheckResult(
                    "gronwall",
                    f"{system.name} ({label}): ||v||_inf <= v_bar",
                    worst_excess <= 1e-6,
                    f"max ||v||_inf - v_bar = {worst_excess:.3e}",
                )
            )
    return results


def suite_dominance(ctx: _Context) -> List[CheckResult]:
    rng = ctx.rng
    results = []

    violations = 0
    for _ in range(ctx.settings["random_instances"]):
        n = int(rng.integers(1, 4))
        B, B_c, B_uc = random_partition(rng, n, 1)
        t_f = float(rng.uniform(0.5, 5.0))
        R = float(rng.uniform(0.1, 10.0))
        bound = resilience_bound_driftless(B, B_c, B_uc, t_f, R)
        for _ in range(20):
            x_tilde = _random_ball_point(rng, n, R)
            if rng.uniform() < 0.3:
                u = float(rng.choice([-1.0, 1.0]))
            else:
                u = float(rng.uniform(-1, 1))
            total = (
                malfunctioning_energy_driftless(B_c, B_uc, x_tilde, t_f, [u])
                + t_f * u**2
            )
            gap = total - nominal_energy_driftless(B, x_tilde, t_f)
            if not _dominates(bound, gap):
                violations += 1
    results.append(
        CheckResult(
            "dominance",
            "driftless single-actuator resilience bound",
            violations == 0,
            f"{violations} violations",
        )
    )

    violations = 0
    mismatch = 0.0
    for _ in range(ctx.settings["random_instances"]):
        n = int(rng.integers(1, 4))
        B, B_c, B_uc = random_partition(rng, n, 2)
        t_f = float(rng.uniform(0.5, 5.0))
        x_tilde = rng.standard_normal(n)
        bound = worst_case_total_bound_driftless(B_c, B_uc, x_tilde, t_f)
        for _ in range(10):
            u = random_signal(rng, 2, t_f)
            total = total_energy_driftless(B_c, B_uc, x_tilde, t_f, u)
            if not _dominates(bound, total):
                violations += 1
        _, B_c1, B_uc1 = random_partition(rng, n, 1)
        v = rng.uniform(-0.5, 0.5, n)
        exact = worst_case_total_1act(B_c1, B_uc1, x_tilde, t_f, v).value
        mismatch = max(
            mismatch,
            abs(exact - worst_case_total_bound(B_c1, B_uc1, x_tilde, t_f, v))
            / max(1.0, exact),
        )
    results.append(
        CheckResult(
            "dominance",
            "worst-case bound above sampled totals (p = 2)",
            violations == 0,
            f"{violations} violations",
        )
    )
    results.append(
        CheckResult(
            "dominance",
            "bound equals closed form at p = 1",
            mismatch <= 1e-9,
            f"max relative difference {mismatch:.3e}",
        )
    )

    points = int(ctx.settings["sweep_points"])
    for bundle in ctx.bundles:
        system = bundle.system
        if bundle.partition.p != 1:
            continue
        if system.kind == SystemKind.DRIFTLESS:
            df = run_sweep(bundle, 1e2, 1e4, points, t_f=10.0)
        else:
            df = run_sweep(bundle, 0.1, 10.0, points, t_f=1.0)
        bound = df[SweepColumns.R_A_BOUND]
        scale = np.maximum(1.0, bound)
        excess = (df[SweepColumns.GAP] - bound) / scale
        for column in signal_total_columns(df):
            signal_gap = df[column] - df[SweepColumns.E_NOMINAL]
            excess = np.maximum(excess, (signal_gap - bound) / scale)
        results.append(
            CheckResult(
                "dominance",
                f"{system.name} sweep rows below the resilience bound",
                bool(np.all(excess <= _DOMINANCE_TOL)),
                f"max relative excess {float(np.max(excess)):.3e}",
            )
        )
        if system.kind == SystemKind.DRIFTLESS:
            errors = df[SweepColumns.RELATIVE_ERROR]
            worst_error = float(errors.max())
            results.append(
                CheckResult(
                    "dominance",
                    f"{system.name} relative error below 40%",
                    worst_error < 0.4,
                    f"relative error {float(errors.iloc[0]):.3%} at "
                    f"R={float(df[SweepColumns.R].iloc[0]):g} (reference ~20%), "
                    f"max {worst_error:.3%} (reference < 35%)",
                )
            )
    return results


def suite_reduction(ctx: _Context) -> List[CheckResult]:
    rng = ctx.rng
    worst = 0.0
    for _ in range(ctx.settings["random_instances"]):
        n = int(rng.integers(1, 4))
        B, B_c, B_uc = random_partition(rng, n, 1, min_sigma=None)
        x_tilde = rng.standard_normal(n)
        t_f = float(rng.uniform(0.1, 10.0))
        R = float(rng.uniform(0.0, 10.0))
        u = rng.uniform(-1, 1, 1)
        zero = np.zeros(n)
        pairs = [
            (
                nominal_energy_approx(B, x_tilde, t_f, zero),
                nominal_energy_driftless(B, x_tilde, t_f),
            ),
            (
                malfunctioning_energy_approx(B_c, B_uc, x_tilde, t_f, zero, u),
                malfunctioning_energy_driftless(B_c, B_uc, x_tilde, t_f, u),
            ),
            (
                worst_case_total_bound(B_c, B_uc, x_tilde, t_f, zero),
                worst_case_total_bound_driftless(B_c, B_uc, x_tilde, t_f),
            ),
            (
                worst_case_total_1act(B_c, B_uc, x_tilde, t_f, zero).value,
                worst_case_total_exact_1act(B_c, B_uc, x_tilde, t_f).value,
            ),
            (
                resilience_bound_1act(B, B_c, B_uc, t_f, R, 0.0, n),
                resilience_bound_driftless(B, B_c, B_uc, t_f, R),
            ),
            (v_bound(0.0, 0.0, 0.0, induced_norm(B, np.inf), t_f).v_bar, 0.0),
        ]
        for approx, exact in pairs:
            worst = max(worst, abs(approx - exact) / max(1.0, abs(exact)))
    return [
        CheckResult(
            "reduction",
            "nonlinear formulas reduce to driftless ones at v = 0",
            worst <= 1e-12,
            f"max relative difference {worst:.3e}",
        )
    ]


def scalar_achievability(t_f: float = 1.0, R: float = 1.0):
    """Enumerated sup of total minus nominal energy and the bound, b_c = b_uc = 1.

    Returns:
        (enumerated supremum, resilience bound)
    """
    B = np.array([[1.0, 1.0]])
    B_c, B_uc = B[:, :1], B[:, 1:]
    best = -np.inf
    for x in (-R, R):
        for u in (-1.0, 1.0):
            total = malfunctioning_energy_driftless(B_c, B_uc, [x], t_f, [u]) + t_f
            best = max(best, total - nominal_energy_driftless(B, [x], t_f))
    return best, resilience_bound_driftless(B, B_c, B_uc, t_f, R)


def suite_achievability(ctx: _Context) -> List[CheckResult]:
    supremum, bound = scalar_achievability()
    results = [
        CheckResult(
            "achievability",
            "scalar system attains the bound (4.5)",
            abs(supremum - bound) <= 1e-9 and abs(bound - 4.5) <= 1e-9,
            f"sup = {supremum:.12g}, bound = {bound:.12g}",
        )
    ]
    worst = 0.0
    B_c, B_uc = np.array([[1.0]]), np.array([[1.0]])
    for _ in range(ctx.settings["random_instances"]):
        x_tilde = ctx.rng.uniform(-5, 5, 1)
        t_f = float(ctx.rng.uniform(0.1, 5.0))
        worst_case = worst_case_total_exact_1act(B_c, B_uc, x_tilde, t_f)
        attained = (
            malfunctioning_energy_driftless(
                B_c, B_uc, x_tilde, t_f, [worst_case.worst_sign]
            )
            + t_f
        )
        error = abs(attained - worst_case.value) / max(1.0, worst_case.value)
        worst = max(worst, error)
    results.append(
        CheckResult(
            "achievability",
            "worst-case sign input attains the closed form (scalar)",
            worst <= 1e-9,
            f"max relative difference {worst:.3e}",
        )
    )
    return results


def brute_force_interval(B, x_tilde, t_f: float, grid_step: float):
    """Range the grid minimum must fall in.

    Lower end: any grid hit has ||t_f u||_2 >= ||B^+ x_tilde|| - ||B^+||_2 sqrt(n) tol.
    Upper end: the grid point nearest the least-squares control is a hit.
    """
    B = np.atleast_2d(np.asarray(B, dtype=float))
    x_tilde = np.asarray(x_tilde, dtype=float)
    tol = t_f * grid_step * induced_norm(B, np.inf)
    B_pinv = pinv(B)
    reach = vec_norm(B_pinv @ x_tilde, 2)
    slack = induced_norm(B_pinv, 2) * np.sqrt(B.shape[0]) * tol
    lower = max(0.0, reach - slack) ** 2 / t_f
    upper = t_f * (reach / t_f + np.sqrt(B.shape[1]) * grid_step / 2) ** 2
    return lower, upper


def suite_brute_force(ctx: _Context) -> List[CheckResult]:
    step = float(ctx.settings["brute_force_grid_step"])
    cases = [("identity", np.eye(2), np.array([1.0, 0.0]), 2.0)]
    for system, partition, task in ctx.bundles:
        if system.kind == SystemKind.DRIFTLESS and partition.B.shape[1] <= 3:
            cases.append((system.name, partition.B, task.x_tilde, task.t_f))
    results = []
    for name, B, x_tilde, t_f in cases:
        lower, upper = brute_force_interval(B, x_tilde, t_f, step)
        try:
            value = brute_force_constant_min(B, x_tilde, t_f, step)
        except OracleError as e:
            results.append(CheckResult("brute_force", name, False, str(e)))
            continue
        closed = nominal_energy_driftless(B, x_tilde, t_f)
        results.append(
            CheckResult(
                "brute_force",
                f"{name}: grid minimum brackets the nominal energy",
                lower - 1e-12 <= value <= upper + 1e-12 and lower <= closed <= upper,
                f"grid {value:.6g}, closed form {closed:.6g}, "
                f"range [{lower:.6g}, {upper:.6g}]",
            )
        )
    # Targets reached exactly by a grid point in the row space of B
    aligned = [
        ("identity", np.eye(2), np.array([-0.5, 0.0]), 2.0),
        (
            "robot",
            np.array([[2.0, 1.0, 1.0], [0.2, -1.0, 1.0]]),
            np.array([0.11, 0.0, 0.1]),
            10.0,
        ),
    ]
    for name, B, u_star, t_f in aligned:
        x_tilde = -t_f * B @ u_star
        closed = nominal_energy_driftless(B, x_tilde, t_f)
        value = brute_force_constant_min(B, x_tilde, t_f, 0.01, tolerance=1e-9)
        results.append(
            CheckResult(
                "brute_force",
                f"{name}: grid-aligned target matches the nominal energy",
                abs(value - closed) <= 1e-9 * max(1.0, closed),
                f"grid {value:.12g}, closed form {closed:.12g}",
            )
        )
    return results


def suite_box_feasibility(ctx: _Context) -> List[CheckResult]:
    rng = ctx.rng
    disagreements = 0
    count = 2 * int(ctx.settings["random_instances"])
    for _ in range(count):
        n = int(rng.integers(1, 7))
        p = int(rng.integers(1, 4))
        B, B_c, B_uc = random_partition(rng, n, p, min_sigma=None)
        x_tilde = rng.standard_normal(n) * rng.uniform(0.1, 3.0)
        t_f = float(rng.uniform(0.2, 5.0))
        v_bar = float(rng.uniform(0.0, 0.5))
        if feasibility_nominal(B, x_tilde, t_f, v_bar) != enumerate_feasibility_nominal(
            B, x_tilde, t_f, v_bar
        ):
            disagreements += 1
        if feasibility_malfunctioning(
            B_c, B_uc, x_tilde, t_f, v_bar
        ) != enumerate_feasibility_malfunctioning(B_c, B_uc, x_tilde, t_f, v_bar):
            disagreements += 1
    return [
        CheckResult(
            "box_feasibility",
            "closed-form box checks match vertex enumeration",
            disagreements == 0,
            f"{disagreements} disagreements over {count} instances",
        )
    ]


def suite_optimal_final_time(ctx: _Context) -> List[CheckResult]:
    rng = ctx.rng
    worst = 0.0
    done = 0
    while done < ctx.settings["random_instances"]:
        n = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        _, B_c, B_uc = random_partition(rng, n, p, min_sigma=None)
        x_tilde = rng.standard_normal(n)
        u = rng.uniform(-1, 1, p)
        try:
            closed = optimal_final_time(B_c, B_uc, x_tilde, u)
        except ValueError:
            continue
        if not 2e-3 <= closed <= 5e2:
            continue
        searched = brute_force_opt_tf(B_c, B_uc, x_tilde, u)
        worst = max(worst, abs(searched - closed) / closed)
        done += 1
    return [
        CheckResult(
            "optimal_final_time",
            "closed form matches golden-section search",
            worst <= 1e-6,
            f"max relative difference {worst:.3e}",
        )
    ]


def suite_integrator_order(ctx: _Context) -> List[CheckResult]:
    linear = [b for b in ctx.bundles if b.system.kind == SystemKind.LINEAR]
    results = []
    for system, _, task in linear:
        zero = ConstantSignal(np.zeros(system.inputs))
        steps = np.array([0.1, 0.05, 0.025])
        reference = linear_reference_terminal(system.A, task.x0, 1.0)
        terminals = [integrate(system, zero, task.x0, 1.0, dt=h) for h in steps]
        errors = np.array(
            [vec_norm(t.terminal_state - reference, np.inf) for t in terminals]
        )
        slope = float(np.polyfit(np.log(steps), np.log(errors), 1)[0])
        results.append(
            CheckResult(
                "integrator_order",
                f"{system.name}: fourth-order convergence",
                abs(slope - 4.0) <= 0.3,
                f"log-log slope {slope:.3f}",
            )
        )
        fine = integrate(system, zero, task.x0, 1.0, dt=1e-3).terminal_state
        error = vec_norm(fine - reference, np.inf)
        results.append(
            CheckResult(
                "integrator_order",
                f"{system.name}: matches the matrix exponential at dt = 1e-3",
                error <= 1e-8,
                f"error {error:.3e}",
            )
        )
    for system, partition, task in ctx.bundles:
        if system.kind != SystemKind.DRIFTLESS:
            continue
        u = ConstantSignal(ctx.rng.uniform(-1, 1, system.inputs))
        terminal = integrate(system, u, task.x0, task.t_f).terminal_state
        expected = task.x0 + task.t_f * partition.B @ u.value
        scale = max(1.0, vec_norm(expected, np.inf))
        error = vec_norm(terminal - expected, np.inf) / scale
        results.append(
            CheckResult(
                "integrator_order",
                f"{system.name}: exact for constant inputs",
                error <= 1e-12,
                f"relative error {error:.3e}",
            )
        )
    return results


SUITES: Dict[str, Callable[[_Context], List[CheckResult]]] = {
    "penrose": suite_penrose,
    "jensen": suite_jensen,
    "gronwall": suite_gronwall,
    "dominance": suite_dominance,
    "reduction": suite_reduction,
    "achievability": suite_achievability,
    "brute_force": suite_brute_force,
    "box_feasibility": suite_box_feasibility,
    "optimal_final_time": suite_optimal_final_time,
    "integrator_order": suite_integrator_order,
}


def run_validation(
    level: str = "quick",
    seed: Optional[int] = None,
    suites: Optional[Sequence[str]] = None,
    bundles: Optional[List[ModelBundle]] = None,
) -> ValidationSummary:
    """Run the invariant suites.

    Args:
        level: 'quick' or 'full' (sample counts from config validation.<level>)
        seed: Seed for random instances, config validation.seed when omitted
        suites: Subset of SUITES to run, all when omitted
        bundles: Models to validate against, every bundled model when omitted

    Returns:
        ValidationSummary; `passed` is False if any check failed
    """
    settings = level_settings(level)
    if seed is None:
        seed = int(config_section("validation", "seed", 0))
    names = list(SUITES) if suites is None else list(suites)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suite(s): {', '.join(unknown)}")
    if bundles is None:
        bundles = bundled_models()

    summary = ValidationSummary(level=level, seed=seed)
    for name in names:
        # Each suite gets its own stream so subsets reproduce the full run
        ctx = _Context(
            rng=np.random.default_rng([seed, list(SUITES).index(name)]),
            settings=settings,
            bundles=bundles,
        )
        try:
            results = SUITES[name](ctx)
        except (ValueError, RuntimeError, ArithmeticError) as e:
            LOG.exception("Suite %s raised: %s", name, e)
            results = [CheckResult(name, "suite completed", False, str(e))]
        failed = sum(not r.passed for r in results)
        LOG.info("Suite %s: %d checks, %d failed", name, len(results), failed)
        summary.results.extend(results)
    return summary


def corrupt_lipschitz(bundle: ModelBundle, lipschitz_f: float) -> ModelBundle:
    """Copy of a bundle with a different declared D_f, bypassing the spot check."""
    return ModelBundle(
        replace(bundle.system, lipschitz_f=lipschitz_f), bundle.partition, bundle.task
    )
