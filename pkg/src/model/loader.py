"""Load and validate JSON model definition files."""

import json
import math
from pathlib import Path
from typing import Any, Dict, NamedTuple, Optional, Union

import numpy as np

from src.common.utils import LOG
from src.constants.config import MODELS_DIR
from src.model.dynamics import (
    WIND_FAMILIES,
    driftless_system,
    linear_system,
    verify_lipschitz,
    wind_system,
)
from src.model.types import (
    ActuatorPartition,
    ControlSystem,
    ModelValidationError,
    ReachTask,
    SystemKind,
)

TOP_LEVEL_FIELDS = {
    "name",
    "kind",
    "A",
    "B",
    "wind",
    "D_f",
    "D_g",
    "uncontrolled_indices",
    "task",
    "lipschitz_box",
}
REQUIRED_FIELDS = {"kind", "B", "uncontrolled_indices", "task"}
WIND_FIELDS = {"family", "amplitude"}
TASK_FIELDS = {"x0", "x_tg", "t_f", "R"}
REQUIRED_TASK_FIELDS = {"x0", "x_tg", "t_f"}


class ModelBundle(NamedTuple):
    system: ControlSystem
    partition: ActuatorPartition
    task: ReachTask


def _reject_unknown(data: Dict[str, Any], allowed, where: str) -> None:
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ModelValidationError(f"Unknown field(s) in {where}: {', '.join(unknown)}")


def _require(data: Dict[str, Any], required, where: str) -> None:
    missing = sorted(set(required) - set(data))
    if missing:
        raise ModelValidationError(f"Missing field(s) in {where}: {', '.join(missing)}")


def _number(data: Dict[str, Any], key: str, default: Optional[float] = None) -> float:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelValidationError(f"'{key}' must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ModelValidationError(f"'{key}' must be finite, got {value!r}")
    return float(value)


def _vector(data: Dict[str, Any], key: str, n: int) -> np.ndarray:
    try:
        arr = np.asarray(data[key], dtype=float)
    except (TypeError, ValueError) as e:
        raise ModelValidationError(f"task.{key} must be a list of numbers") from e
    if arr.shape != (n,):
        raise ModelValidationError(f"task.{key} {arr.shape} must have length {n}")
    if not np.all(np.isfinite(arr)):
        raise ModelValidationError(f"task.{key} must be finite, got {arr.tolist()}")
    return arr


def _parse_task(raw: Any, n: int) -> ReachTask:
    if not isinstance(raw, dict):
        raise ModelValidationError("'task' must be an object")
    _reject_unknown(raw, TASK_FIELDS, "task")
    _require(raw, REQUIRED_TASK_FIELDS, "task")
    x0 = _vector(raw, "x0", n)
    x_tg = _vector(raw, "x_tg", n)
    R = _number(raw, "R") if raw.get("R") is not None else None
    return ReachTask(x0=x0, x_tg=x_tg, t_f=_number(raw, "t_f"), R=R)


def _build_system(data: Dict[str, Any], kind: SystemKind, p: int) -> ControlSystem:
    name = str(data.get("name", ""))
    B = data["B"]
    if kind == SystemKind.DRIFTLESS:
        if "A" in data or "wind" in data:
            raise ModelValidationError("Driftless models take neither 'A' nor 'wind'")
        if _number(data, "D_f", 0.0) != 0.0 or _number(data, "D_g", 0.0) != 0.0:
            raise ModelValidationError("Driftless models require D_f = D_g = 0")
        return driftless_system(B, p=p, name=name)

    _require(data, {"A", "D_f", "D_g"}, f"{kind} model")
    D_f = _number(data, "D_f")
    D_g = _number(data, "D_g")
    if D_g != 0.0:
        raise ModelValidationError(
            f"Builtin {kind} models have a constant input map; D_g must be 0"
        )
    if kind == SystemKind.LINEAR:
        if "wind" in data:
            raise ModelValidationError("Linear models take no 'wind' term")
        return linear_system(data["A"], B, p=p, lipschitz_f=D_f, name=name)

    wind = data.get("wind")
    if not isinstance(wind, dict):
        raise ModelValidationError("Nonlinear models need a 'wind' object")
    _reject_unknown(wind, WIND_FIELDS, "wind")
    _require(wind, WIND_FIELDS, "wind")
    if wind["family"] not in WIND_FAMILIES:
        raise ModelValidationError(f"Unknown wind family '{wind['family']}'")
    return wind_system(
        data["A"],
        B,
        p=p,
        family=wind["family"],
        amplitude=_number(wind, "amplitude"),
        lipschitz_f=D_f,
        name=name,
    )


def model_from_dict(data: Dict[str, Any], source: str = "<dict>") -> ModelBundle:
    """Validate a parsed model definition and derive partition and task.

    Raises:
        ModelValidationError: Naming the violated invariant
    """
    if not isinstance(data, dict):
        raise ModelValidationError(f"{source}: model definition must be a JSON object")
    _reject_unknown(data, TOP_LEVEL_FIELDS, source)
    _require(data, REQUIRED_FIELDS, source)

    try:
        kind = SystemKind(data["kind"])
    except ValueError as e:
        raise ModelValidationError(f"Unknown kind {data['kind']!r}") from e

    try:
        indices = [int(i) for i in data["uncontrolled_indices"]]
    except (TypeError, ValueError) as e:
        raise ModelValidationError("'uncontrolled_indices' must be integers") from e

    system = _build_system(data, kind, p=len(indices))
    task = _parse_task(data["task"], system.n)
    partition = ActuatorPartition.at_state(system, task.x0, indices)

    box = data.get("lipschitz_box")
    if box is not None and _number(data, "lipschitz_box") <= 0:
        raise ModelValidationError("'lipschitz_box' must be positive")
    check = verify_lipschitz(system, center=task.x_tg, box=box)
    if not check.passed:
        raise ModelValidationError(
            f"Declared Lipschitz constants are violated: sampled |df|/|dx| = "
            f"{check.ratio_f:.6g} vs D_f = {system.lipschitz_f}, |dg|/|dx| = "
            f"{check.ratio_g:.6g} vs D_g = {system.lipschitz_g}"
        )
    return ModelBundle(system=system, partition=partition, task=task)


def resolve_model_path(path: Union[str, Path]) -> Path:
    """Accept a file path or the stem of a bundled model under models/."""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    bundled = MODELS_DIR / f"{candidate.name}.json"
    if candidate.suffix == "" and bundled.exists():
        return bundled
    return candidate


def load_model(path: Union[str, Path]) -> ModelBundle:
    """Load a model definition file.

    Args:
        path: JSON file, or the name of a bundled model (e.g. 'admire_wind')

    Returns:
        (system, partition, task)

    Raises:
        OSError: File missing or unreadable
        json.JSONDecodeError: Malformed JSON
        ModelValidationError: Invariant violated
    """
    path = resolve_model_path(path)
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        LOG.error("Failed to load model from %s: %s", path, e)
        raise

    if isinstance(data, dict) and "name" not in data:
        data = {**data, "name": path.stem}
    bundle = model_from_dict(data, source=str(path))
    LOG.info(
        "Loaded model %s: %s, n=%d, m=%d, p=%d",
        bundle.system.name,
        bundle.system.kind,
        bundle.system.n,
        bundle.system.m,
        bundle.system.p,
    )
    return bundle
