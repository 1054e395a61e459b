"""Uncontrolled-input families compared against the worst case.

The default family mixes sinusoids, constants of both signs and
exponential decays, followed by the constant worst-case sign input.
"""

from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from src.common.utils import config_section
from src.model.signals import (
    ConstantSignal,
    ExponentialDecaySignal,
    InadmissibleSignalError,
    InputSignal,
    SignConstantSignal,
    SinusoidSignal,
)

DEFAULT_SIGNAL_FAMILY: Dict[str, Any] = {
    "sinusoid_frequencies": [1.0, 5.0, 20.0],
    "sinusoid_amplitude": 1.0,
    "constant_amplitudes": [0.5, -0.5, 1.0, -1.0],
    "decay_rates": [1.0, 5.0],
    "decay_amplitude": 1.0,
    "include_worst_case": True,
}


def default_family() -> Dict[str, Any]:
    return {**DEFAULT_SIGNAL_FAMILY, **(config_section("signal_sweep") or {})}


def _check_amplitude(value: float, what: str) -> float:
    if abs(value) > 1.0:
        raise InadmissibleSignalError(f"{what} amplitude {value} exceeds 1")
    return float(value)


def signal_sweep(
    family_spec: Optional[Dict[str, Any]] = None,
    channels: int = 1,
    worst_sign: Optional[Union[int, Sequence[int]]] = None,
) -> List[InputSignal]:
    """Build the ordered signal list.

    Args:
        family_spec: Keys as in DEFAULT_SIGNAL_FAMILY; None uses the
            `signal_sweep` config section
        channels: Channels per signal (p for uncontrolled inputs)
        worst_sign: Sign(s) of the worst-case constant input; +1 when omitted

    Returns:
        Signals in order: sinusoids, constants, decays, worst case

    Raises:
        ValueError: Empty or unknown spec keys
        InadmissibleSignalError: Any amplitude above 1
    """
    if family_spec is None:
        family_spec = default_family()
    if not family_spec:
        raise ValueError("Signal family spec is empty")
    unknown = sorted(set(family_spec) - set(DEFAULT_SIGNAL_FAMILY))
    if unknown:
        raise ValueError(f"Unknown signal family keys: {', '.join(unknown)}")

    ones = np.ones(channels)
    signals: List[InputSignal] = []

    amplitude = _check_amplitude(family_spec.get("sinusoid_amplitude", 1.0), "Sinusoid")
    for w in family_spec.get("sinusoid_frequencies", []):
        signals.append(SinusoidSignal(amplitude * ones, float(w) * ones, 0.0 * ones))

    for value in family_spec.get("constant_amplitudes", []):
        signals.append(ConstantSignal(_check_amplitude(value, "Constant") * ones))

    decay = _check_amplitude(family_spec.get("decay_amplitude", 1.0), "Decay")
    for k in family_spec.get("decay_rates", []):
        signals.append(ExponentialDecaySignal(decay * ones, float(k) * ones))

    if family_spec.get("include_worst_case", True):
        sign = ones
        if worst_sign is not None:
            sign = np.resize(np.asarray(worst_sign, dtype=float), channels)
        signals.append(SignConstantSignal(np.where(sign >= 0, 1.0, -1.0)))

    if not signals:
        raise ValueError("Signal family spec produced no signals")
    return signals
