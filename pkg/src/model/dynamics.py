"""Builtin dynamics: driftless, linear drift and the wind-disturbed aircraft family.

Drift and input maps are module-level functions bound with functools.partial
so that systems stay picklable and comparable by parameters.
"""

from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, Optional

import numpy as np

from src.common.utils import LOG, config_section
from src.constants.resilience import LIPSCHITZ_BOX, LIPSCHITZ_SAMPLES
from src.model.types import ControlSystem, ModelValidationError, SystemKind
from src.numerics import induced_norm, vec_norm

# Relative slack on the Lipschitz spot check, absorbs round-off in f(x1) - f(x2)
_LIPSCHITZ_RTOL = 1e-9


def _zero_drift(x, n: int) -> np.ndarray:
    return np.zeros(n)


def _linear_drift(x, A: np.ndarray) -> np.ndarray:
    return A @ np.asarray(x, dtype=float)


def _constant_input_map(x, B: np.ndarray) -> np.ndarray:
    return B.copy()


def admire_wind_term(x, amplitude: float) -> np.ndarray:
    """Wind disturbance (c/2) [sin p cos^2 p, -sin 2q, 1] on roll and pitch rates.

    The infinity-norm Lipschitz constant is c: the first component has
    slope at most c/2 and the second at most c.
    """
    p, q = float(x[0]), float(x[1])
    return 0.5 * amplitude * np.array(
        [np.sin(p) * np.cos(p) ** 2, -np.sin(2.0 * q), 1.0]
    )


def admire_wind_lipschitz(amplitude: float) -> float:
    return float(amplitude)


def _wind_drift(x, A: np.ndarray, term, amplitude: float) -> np.ndarray:
    return A @ np.asarray(x, dtype=float) + term(x, amplitude)


@dataclass(frozen=True)
class WindFamily:
    term: Callable[[np.ndarray, float], np.ndarray]
    lipschitz: Callable[[float], float]
    state_dim: int


WIND_FAMILIES: Dict[str, WindFamily] = {
    "admire_wind": WindFamily(
        term=admire_wind_term, lipschitz=admire_wind_lipschitz, state_dim=3
    ),
}


def _as_matrix(M, name: str) -> np.ndarray:
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.size == 0 or not np.all(np.isfinite(arr)):
        raise ModelValidationError(f"{name} must be a finite non-empty matrix")
    return arr


def driftless_system(B, p: int, name: str = "") -> ControlSystem:
    B = _as_matrix(B, "B")
    n, total = B.shape
    return ControlSystem(
        kind=SystemKind.DRIFTLESS,
        drift=partial(_zero_drift, n=n),
        input_map=partial(_constant_input_map, B=B),
        n=n,
        m=total - p,
        p=p,
        lipschitz_f=0.0,
        lipschitz_g=0.0,
        name=name,
    )


def linear_system(
    A, B, p: int, lipschitz_f: Optional[float] = None, name: str = ""
) -> ControlSystem:
    """x' = A x + B u; D_f defaults to ||A||_inf and D_g is 0."""
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    if A.shape != (B.shape[0], B.shape[0]):
        raise ModelValidationError(
            f"A has shape {A.shape}, expected {(B.shape[0], B.shape[0])}"
        )
    if lipschitz_f is None:
        lipschitz_f = induced_norm(A, np.inf)
    n, total = B.shape
    return ControlSystem(
        kind=SystemKind.LINEAR,
        drift=partial(_linear_drift, A=A),
        input_map=partial(_constant_input_map, B=B),
        n=n,
        m=total - p,
        p=p,
        lipschitz_f=float(lipschitz_f),
        lipschitz_g=0.0,
        A=A,
        name=name,
    )


def wind_system(
    A,
    B,
    p: int,
    family: str,
    amplitude: float,
    lipschitz_f: Optional[float] = None,
    name: str = "",
) -> ControlSystem:
    """Linear drift plus a builtin wind term; g stays constant.

    Raises:
        ModelValidationError: Unknown family, negative amplitude or wrong state size
    """
    if family not in WIND_FAMILIES:
        raise ModelValidationError(
            f"Unknown wind family '{family}' (known: {sorted(WIND_FAMILIES)})"
        )
    if amplitude < 0:
        raise ModelValidationError(f"Wind amplitude must be >= 0, got {amplitude}")
    spec = WIND_FAMILIES[family]
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    if A.shape != (spec.state_dim, spec.state_dim) or B.shape[0] != spec.state_dim:
        raise ModelValidationError(
            f"Wind family '{family}' needs a {spec.state_dim}-state system, "
            f"got A {A.shape} and B {B.shape}"
        )
    if lipschitz_f is None:
        lipschitz_f = induced_norm(A, np.inf) + spec.lipschitz(amplitude)
    n, total = B.shape
    drift = partial(_wind_drift, A=A, term=spec.term, amplitude=float(amplitude))
    return ControlSystem(
        kind=SystemKind.NONLINEAR,
        drift=drift,
        input_map=partial(_constant_input_map, B=B),
        n=n,
        m=total - p,
        p=p,
        lipschitz_f=float(lipschitz_f),
        lipschitz_g=0.0,
        A=A,
        name=name,
    )


@dataclass(frozen=True)
class LipschitzCheck:
    """Largest sampled difference quotients against the declared constants."""

    ratio_f: float
    ratio_g: float
    samples: int
    passed: bool


def verify_lipschitz(
    system: ControlSystem,
    center=None,
    box: Optional[float] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> LipschitzCheck:
    """Spot-check the declared D_f and D_g on random state pairs.

    Pairs are drawn uniformly from the box ||x - center||_inf <= box.

    Args:
        system: System under test
        center: Box center, zero by default
        box: Half-width of the box
        samples: Number of random pairs
        seed: Seed for the pair generator

    Returns:
        LipschitzCheck with the worst sampled quotients
    """
    if box is None:
        box = config_section("model", "lipschitz_box", LIPSCHITZ_BOX)
    if samples is None:
        samples = config_section("model", "lipschitz_samples", LIPSCHITZ_SAMPLES)
    if seed is None:
        seed = config_section("model", "lipschitz_seed", 0)
    center = np.zeros(system.n) if center is None else np.asarray(center, dtype=float)

    rng = np.random.default_rng(seed)
    x1 = center + rng.uniform(-box, box, size=(samples, system.n))
    x2 = center + rng.uniform(-box, box, size=(samples, system.n))

    ratio_f = ratio_g = 0.0
    passed = True
    for a, b in zip(x1, x2):
        dx = vec_norm(a - b, np.inf)
        if dx == 0.0:
            continue
        df = vec_norm(system.drift(a) - system.drift(b), np.inf)
        dg = induced_norm(system.input_map(a) - system.input_map(b), np.inf)
        ratio_f = max(ratio_f, df / dx)
        ratio_g = max(ratio_g, dg / dx)
        if df > system.lipschitz_f * dx * (1 + _LIPSCHITZ_RTOL) + 1e-12:
            passed = False
        if dg > system.lipschitz_g * dx * (1 + _LIPSCHITZ_RTOL) + 1e-12:
            passed = False

    LOG.debug(
        "Lipschitz check on %s: df/dx <= %.6g (D_f=%s), dg/dx <= %.6g (D_g=%s)",
        system.name or system.kind,
        ratio_f,
        system.lipschitz_f,
        ratio_g,
        system.lipschitz_g,
    )
    return LipschitzCheck(
        ratio_f=ratio_f, ratio_g=ratio_g, samples=samples, passed=passed
    )
