"""Domain types: control systems, actuator partitions, reach tasks, reports."""

from dataclasses import dataclass, field
from src.constants.compat import StrEnum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.constants.resilience import Exactness, ExpressionClass
from src.numerics import is_full_row_rank, vec_norm


class ModelValidationError(ValueError):
    """Raised when a model, partition or task violates one of its invariants."""


class SystemKind(StrEnum):
    DRIFTLESS = "driftless"
    LINEAR = "linear"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True, eq=False)
class ControlSystem:
    """Control-affine dynamics x' = f(x) + g(x) u with declared Lipschitz constants.

    `drift` maps a state to R^n, `input_map` maps a state to an n x (m+p)
    matrix. Lipschitz constants are in the infinity norm.
    """

    kind: SystemKind
    drift: Callable[[np.ndarray], np.ndarray]
    input_map: Callable[[np.ndarray], np.ndarray]
    n: int
    m: int
    p: int
    lipschitz_f: float
    lipschitz_g: float
    A: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        if self.n <= 0 or self.m <= 0 or self.p <= 0:
            raise ModelValidationError(
                f"Dimensions must be positive (n={self.n}, m={self.m}, p={self.p})"
            )
        if not all(
            np.isfinite(c) and c >= 0 for c in (self.lipschitz_f, self.lipschitz_g)
        ):
            raise ModelValidationError(
                "Lipschitz constants must be finite and non-negative "
                f"(D_f={self.lipschitz_f}, D_g={self.lipschitz_g})"
            )
        if self.kind == SystemKind.DRIFTLESS and (self.lipschitz_f or self.lipschitz_g):
            raise ModelValidationError("Driftless systems require D_f = D_g = 0")

    @property
    def inputs(self) -> int:
        return self.m + self.p

    def rhs(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        return self.drift(x) + self.input_map(x) @ u


@dataclass(frozen=True, eq=False)
class ActuatorPartition:
    """Input matrix B = g(x0) split into controlled and uncontrolled columns."""

    x0: np.ndarray
    B: np.ndarray
    uncontrolled_indices: Tuple[int, ...]
    B_c: np.ndarray
    B_uc: np.ndarray
    f0: np.ndarray

    @classmethod
    def at_state(
        cls,
        system: ControlSystem,
        x0: Sequence[float],
        uncontrolled_indices: Sequence[int],
    ) -> "ActuatorPartition":
        """Evaluate g and f at x0 and split the columns of B.

        Raises:
            ModelValidationError: On bad indices or when B or B_c lacks full row rank
        """
        x0 = np.asarray(x0, dtype=float)
        B = np.atleast_2d(np.asarray(system.input_map(x0), dtype=float))
        indices = tuple(int(i) for i in uncontrolled_indices)
        total = B.shape[1]
        if len(set(indices)) != len(indices):
            raise ModelValidationError(f"Duplicate uncontrolled indices: {indices}")
        if not indices or any(i < 0 or i >= total for i in indices):
            raise ModelValidationError(
                f"Uncontrolled indices {indices} out of range for {total} inputs"
            )
        if len(indices) >= total:
            raise ModelValidationError("At least one input must remain controlled")
        controlled = [j for j in range(total) if j not in indices]
        B_c = B[:, controlled]
        B_uc = B[:, list(indices)]
        if not is_full_row_rank(B):
            raise ModelValidationError("B = g(x0) does not have full row rank")
        if not is_full_row_rank(B_c):
            raise ModelValidationError(
                "B_c is rank deficient: controlled inputs cannot reach every direction"
            )
        f0 = np.asarray(system.drift(x0), dtype=float)
        return cls(
            x0=x0, B=B, uncontrolled_indices=indices, B_c=B_c, B_uc=B_uc, f0=f0
        )

    @property
    def m(self) -> int:
        return self.B_c.shape[1]

    @property
    def p(self) -> int:
        return self.B_uc.shape[1]


@dataclass(frozen=True, eq=False)
class ReachTask:
    """Fixed-time reach task from x0 to x_tg, optionally within radius R."""

    x0: np.ndarray
    x_tg: np.ndarray
    t_f: float
    R: Optional[float] = None

    def __post_init__(self):
        x0 = np.asarray(self.x0, dtype=float)
        x_tg = np.asarray(self.x_tg, dtype=float)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "x_tg", x_tg)
        if x0.shape != x_tg.shape or x0.ndim != 1:
            raise ModelValidationError(
                f"x0 {x0.shape} and x_tg {x_tg.shape} must be vectors of equal length"
            )
        if not (np.all(np.isfinite(x0)) and np.all(np.isfinite(x_tg))):
            raise ModelValidationError("x0 and x_tg must be finite")
        if not (np.isfinite(self.t_f) and self.t_f > 0):
            raise ModelValidationError(
                f"t_f must be positive and finite, got {self.t_f}"
            )
        if self.R is not None:
            if not (np.isfinite(self.R) and self.R >= 0):
                raise ModelValidationError(
                    f"R must be non-negative and finite, got {self.R}"
                )
            distance = vec_norm(self.x_tilde, 2)
            if distance > self.R * (1 + 1e-12):
                raise ModelValidationError(
                    f"||x0 - x_tg||_2 = {distance:.6g} exceeds R = {self.R}"
                )

    @property
    def x_tilde(self) -> np.ndarray:
        return self.x0 - self.x_tg

    @property
    def radius(self) -> float:
        """R when supplied, otherwise the task's own distance to target."""
        if self.R is not None:
            return float(self.R)
        return vec_norm(self.x_tilde, 2)


@dataclass(frozen=True)
class ReportedQuantity:
    value: float
    expression: ExpressionClass

    @property
    def exactness(self) -> Exactness:
        return self.expression.exactness


@dataclass
class EnergyReport:
    """Energies and resilience bound for one model and task.

    Energies are in input^2 * seconds. Feasibility keys: `driftless`
    (t_f >= ||B^+ x_tilde||_inf), `nominal` and `malfunctioning` (box checks
    over ||v||_inf <= v_bar).
    """

    model_name: str
    kind: SystemKind
    t_f: float
    R: float
    e_nominal: ReportedQuantity
    e_malfunctioning: ReportedQuantity
    e_total: ReportedQuantity
    e_worst_total: ReportedQuantity
    r_a_bound: ReportedQuantity
    v_bar: float
    v_used: np.ndarray
    uncontrolled_mean: np.ndarray
    worst_sign: int
    degenerate: bool
    gain_bounded: bool
    feasibility: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        for name in self.energy_fields():
            quantity = getattr(self, name)
            if quantity.value < -1e-12:
                raise ValueError(f"{name} is negative: {quantity.value}")

    @staticmethod
    def energy_fields() -> List[str]:
        return [
            "e_nominal",
            "e_malfunctioning",
            "e_total",
            "e_worst_total",
            "r_a_bound",
        ]

    def to_lines(self) -> List[str]:
        """Render as key=value lines, 17 significant digits for floats."""
        lines = [
            f"model={self.model_name}",
            f"kind={self.kind}",
            f"t_f={self.t_f:.17g}",
            f"R={self.R:.17g}",
        ]
        for name in self.energy_fields():
            quantity = getattr(self, name)
            lines.append(f"{name}={quantity.value:.17g}")
            lines.append(f"{name}.tag={quantity.exactness}")
            lines.append(f"{name}.class={quantity.expression}")
        lines.append(f"v_bar={self.v_bar:.17g}")
        lines.append("v_used=" + ",".join(f"{x:.17g}" for x in self.v_used))
        lines.append(
            "uncontrolled_mean=" + ",".join(f"{x:.17g}" for x in self.uncontrolled_mean)
        )
        lines.append(f"worst_sign={self.worst_sign}")
        lines.append(f"degenerate={str(self.degenerate).lower()}")
        lines.append(f"gain_bounded={str(self.gain_bounded).lower()}")
        for key in sorted(self.feasibility):
            lines.append(f"feasible_{key}={str(self.feasibility[key]).lower()}")
        return lines
