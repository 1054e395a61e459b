"""Resilience sweeps over the distance R, written as CSV."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from src.common.utils import LOG, config_section, mkdir_p
from src.constants.resilience import CSV_FLOAT_FORMAT
from src.constants.sweep_columns import TOTAL_COLUMN_PREFIX, SweepColumns
from src.driftless import resilience_bound_driftless, uncontrolled_gain_bounded
from src.driftless.energies import uncontrolled_spectral_term
from src.model.loader import ModelBundle
from src.model.types import SystemKind
from src.nonlinear import (
    feasibility_malfunctioning,
    feasibility_nominal,
    nominal_energy_approx,
    resilience_bound_1act,
    resilience_bound_general,
    response_gap_candidates,
    total_energy_approx,
    v_bound_within_radius,
    worst_case_total_1act,
    worst_case_total_bound,
)
from src.numerics import pinv
from src.simulate.signal_sweep import signal_sweep


def unit_directions(n: int) -> np.ndarray:
    """Deterministic unit vectors covering the sphere in R^n, one per row."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        step = config_section("sweep", "circle_resolution_deg", 1.0)
        angles = np.deg2rad(np.arange(0.0, 360.0, step))
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if n == 3:
        # Fibonacci lattice
        count = int(config_section("sweep", "sphere_points", 400))
        k = np.arange(count) + 0.5
        z = 1.0 - 2.0 * k / count
        radius = np.sqrt(1.0 - z**2)
        theta = np.pi * (1.0 + np.sqrt(5.0)) * k
        return np.column_stack([radius * np.cos(theta), radius * np.sin(theta), z])
    count = int(config_section("sweep", "random_directions", 512))
    rng = np.random.default_rng(config_section("sweep", "direction_seed", 0))
    directions = rng.standard_normal((count, n))
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


class _GapSearch:
    """Vectorized worst-case-minus-nominal energy over many effective displacements."""

    def __init__(self, B, B_c, B_uc, t_f: float):
        self.B_pinv = pinv(B)
        self.B_c_pinv = pinv(B_c)
        self.cross = B_uc.T @ self.B_c_pinv.T @ self.B_c_pinv
        self.constant = t_f * (uncontrolled_spectral_term(B_uc) + B_uc.shape[1])
        self.t_f = t_f

    def gaps(self, Y: np.ndarray) -> np.ndarray:
        worst = (
            np.sum((Y @ self.B_c_pinv.T) ** 2, axis=1) / self.t_f
            + self.constant
            + 2.0 * np.sum(np.abs(Y @ self.cross.T), axis=1)
        )
        nominal = np.sum((Y @ self.B_pinv.T) ** 2, axis=1) / self.t_f
        return worst - nominal


def run_sweep(
    bundle: ModelBundle,
    r_min: float,
    r_max: float,
    points: int,
    t_f: Optional[float] = None,
    family_spec: Optional[Dict[str, Any]] = None,
) -> pd.DataFrame:
    """One row per log-spaced R with energies at the worst (x_tilde, v) pair.

    For each R the pair maximizing worst-case total minus nominal energy is
    searched over ||x_tilde||_2 = R (direction grid) and v in {0} plus the
    v_bar box vertices. Energies, the bound and every signal's total are
    then evaluated at that pair.

    Args:
        bundle: Loaded model
        r_min: Smallest radius (> 0)
        r_max: Largest radius (>= r_min)
        points: Number of radii (>= 2)
        t_f: Final time, the task's when omitted
        family_spec: Uncontrolled-signal family, config default when omitted

    Returns:
        DataFrame with SweepColumns plus one total_<signal> column per signal
    """
    if not 0 < r_min <= r_max:
        raise ValueError(f"Need 0 < r_min <= r_max, got {r_min}, {r_max}")
    if points < 2:
        raise ValueError(f"Need at least 2 points, got {points}")
    system, partition, task = bundle
    t_f = task.t_f if t_f is None else float(t_f)
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")

    B, B_c, B_uc = partition.B, partition.B_c, partition.B_uc
    n, p = system.n, partition.p
    gain_bounded = uncontrolled_gain_bounded(B_c, B_uc)
    if not gain_bounded:
        LOG.warning("Sweep of %s is outside the dominance regime", system.name)

    search = _GapSearch(B, B_c, B_uc, t_f)
    directions = unit_directions(n)
    radii = np.geomspace(r_min, r_max, points)
    LOG.info(
        "Sweeping %s: %d radii in [%g, %g], t_f=%g, %d directions",
        system.name,
        points,
        r_min,
        r_max,
        t_f,
        len(directions),
    )

    rows: List[Dict[str, Any]] = []
    for R in radii:
        if system.kind == SystemKind.DRIFTLESS:
            v_bar = 0.0
        else:
            v_bar = v_bound_within_radius(system, task.x_tg, R, t_f).v_bar
        candidates = response_gap_candidates(n, v_bar)
        X = R * directions
        Y = (X[:, None, :] - candidates[None, :, :]).reshape(-1, n)
        best = int(np.argmax(search.gaps(Y)))
        x_tilde = X[best // len(candidates)]
        v = candidates[best % len(candidates)]

        e_nominal = nominal_energy_approx(B, x_tilde, t_f, v)
        worst_sign = None
        if p == 1:
            worst = worst_case_total_1act(B_c, B_uc, x_tilde, t_f, v)
            e_worst, worst_sign = worst.value, worst.worst_sign
            if system.kind == SystemKind.DRIFTLESS:
                bound = resilience_bound_driftless(B, B_c, B_uc, t_f, R)
            else:
                bound = resilience_bound_1act(B, B_c, B_uc, t_f, R, v_bar, n)
        else:
            e_worst = worst_case_total_bound(B_c, B_uc, x_tilde, t_f, v)
            bound = resilience_bound_general(B, B_c, B_uc, t_f, R, v_bar, n)
        gap = e_worst - e_nominal

        feasible_nominal = feasibility_nominal(B, x_tilde, t_f, v_bar)
        feasible_malf = feasibility_malfunctioning(B_c, B_uc, x_tilde, t_f, v_bar)
        row = {
            SweepColumns.R: R,
            SweepColumns.V_BAR: v_bar,
            SweepColumns.E_NOMINAL: e_nominal,
            SweepColumns.E_WORST_TOTAL: e_worst,
            SweepColumns.GAP: gap,
            SweepColumns.R_A_BOUND: bound,
            SweepColumns.RELATIVE_ERROR: (bound - gap) / bound if bound > 0 else 0.0,
            SweepColumns.FEASIBLE: feasible_nominal and feasible_malf,
            SweepColumns.FEASIBLE_NOMINAL: feasible_nominal,
            SweepColumns.FEASIBLE_MALFUNCTIONING: feasible_malf,
            SweepColumns.GAIN_BOUNDED: gain_bounded,
        }
        for signal in signal_sweep(family_spec, channels=p, worst_sign=worst_sign):
            row[TOTAL_COLUMN_PREFIX + signal.label] = total_energy_approx(
                B_c, B_uc, x_tilde, t_f, v, signal
            )
        LOG.debug("R=%g: gap=%.6g bound=%.6g", R, gap, bound)
        rows.append(row)

    df = pd.DataFrame(rows)
    df.columns = [str(c) for c in df.columns]
    violations = int((df[SweepColumns.GAP] > df[SweepColumns.R_A_BOUND]).sum())
    if violations:
        LOG.warning("%d sweep rows have gap above the bound", violations)
    LOG.info("Sweep of %s finished: %d rows", system.name, len(df))
    return df


def write_sweep_csv(df: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    if path.parent != Path(""):
        mkdir_p(path.parent)
    df.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    LOG.info("Wrote %d rows to %s", len(df), path)
    return path


def signal_total_columns(df: pd.DataFrame) -> List[str]:
    """The total_<signal> columns of a sweep table."""
    return [c for c in df.columns if c.startswith(TOTAL_COLUMN_PREFIX)]
