"""Systems, partitions, reach tasks, input signals and model files."""

from .dynamics import (
    WIND_FAMILIES,
    LipschitzCheck,
    admire_wind_term,
    driftless_system,
    linear_system,
    verify_lipschitz,
    wind_system,
)
from .loader import ModelBundle, load_model, model_from_dict
from .signals import (
    ConstantSignal,
    ExponentialDecaySignal,
    InadmissibleSignalError,
    InputSignal,
    PiecewiseConstantSignal,
    SignalShape,
    SignConstantSignal,
    SinusoidSignal,
    check_unit_box,
    is_admissible,
    require_admissible,
    signal_energy,
    signal_mean,
)
from .types import (
    ActuatorPartition,
    ControlSystem,
    EnergyReport,
    ModelValidationError,
    ReachTask,
    ReportedQuantity,
    SystemKind,
)

__all__ = [
    "WIND_FAMILIES",
    "ActuatorPartition",
    "ConstantSignal",
    "ControlSystem",
    "EnergyReport",
    "ExponentialDecaySignal",
    "InadmissibleSignalError",
    "InputSignal",
    "LipschitzCheck",
    "ModelBundle",
    "ModelValidationError",
    "PiecewiseConstantSignal",
    "ReachTask",
    "ReportedQuantity",
    "SignalShape",
    "SignConstantSignal",
    "SinusoidSignal",
    "SystemKind",
    "admire_wind_term",
    "check_unit_box",
    "driftless_system",
    "is_admissible",
    "linear_system",
    "load_model",
    "model_from_dict",
    "require_admissible",
    "signal_energy",
    "signal_mean",
    "verify_lipschitz",
    "wind_system",
]
