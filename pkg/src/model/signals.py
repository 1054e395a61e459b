"""Uncontrolled-input signals with closed-form means and energies.

Every signal is a vector-valued function of time on [0, t_f] with one
value per channel. `sample` evaluates on a time grid; `left=True` returns
left limits, which only differ from the value for piecewise-constant
signals at their breakpoints.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from src.constants.compat import StrEnum
from typing import ClassVar, Optional, Sequence

import numpy as np

from src.common.utils import config_section
from src.constants.resilience import ADMISSIBILITY_GRID, ADMISSIBILITY_SLACK


class InadmissibleSignalError(ValueError):
    """Raised when a signal or a mean leaves the unit infinity-norm ball."""


class SignalShape(StrEnum):
    CONSTANT = "constant"
    SINUSOID = "sinusoid"
    EXPONENTIAL_DECAY = "exponential_decay"
    SIGN_CONSTANT = "sign_constant"
    PIECEWISE_CONSTANT = "piecewise_constant"


def _channel_vector(values, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def _check_horizon(t_f: float) -> None:
    if not t_f > 0:
        raise ValueError(f"t_f must be positive, got {t_f}")


class InputSignal(ABC):
    """Base class for library signals."""

    shape: ClassVar[SignalShape]

    @property
    @abstractmethod
    def channels(self) -> int:
        """Number of input channels."""

    @abstractmethod
    def sample(self, times, left: bool = False) -> np.ndarray:
        """Values at `times`, shape (len(times), channels)."""

    @abstractmethod
    def mean(self, t_f: float) -> np.ndarray:
        """(1/t_f) times the integral of u over [0, t_f]."""

    @abstractmethod
    def energy(self, t_f: float) -> float:
        """Integral of ||u(t)||_2^2 over [0, t_f]."""

    @abstractmethod
    def broadcast(self, channels: int) -> "InputSignal":
        """Copy of a single-channel signal replicated on `channels` channels."""

    @property
    def label(self) -> str:
        return str(self.shape)

    def _check_broadcast(self, channels: int) -> None:
        if channels == self.channels:
            return
        if self.channels != 1:
            raise ValueError(
                f"Cannot broadcast a {self.channels}-channel signal to {channels}"
            )


@dataclass(frozen=True, eq=False)
class ConstantSignal(InputSignal):
    value: np.ndarray
    shape: ClassVar[SignalShape] = SignalShape.CONSTANT

    def __post_init__(self):
        object.__setattr__(self, "value", _channel_vector(self.value, "value"))

    @property
    def channels(self) -> int:
        return self.value.size

    @property
    def label(self) -> str:
        if np.all(self.value == self.value[0]):
            return f"constant_{self.value[0]:g}"
        return "constant"

    def sample(self, times, left: bool = False) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        return np.tile(self.value, (times.size, 1))

    def mean(self, t_f: float) -> np.ndarray:
        _check_horizon(t_f)
        return self.value.copy()

    def energy(self, t_f: float) -> float:
        _check_horizon(t_f)
        return float(t_f * self.value @ self.value)

    def broadcast(self, channels: int) -> "ConstantSignal":
        self._check_broadcast(channels)
        return ConstantSignal(np.resize(self.value, channels))


@dataclass(frozen=True, eq=False)
class SignConstantSignal(ConstantSignal):
    """Constant signal with entries in {-1, +1}: the worst-case uncontrolled input."""

    shape: ClassVar[SignalShape] = SignalShape.SIGN_CONSTANT

    def __post_init__(self):
        super().__post_init__()
        if not np.all(np.abs(self.value) == 1.0):
            raise ValueError(f"Sign-constant entries must be +/-1, got {self.value}")

    @property
    def label(self) -> str:
        return "worst_case"

    def broadcast(self, channels: int) -> "SignConstantSignal":
        self._check_broadcast(channels)
        return SignConstantSignal(np.resize(self.value, channels))


@dataclass(frozen=True, eq=False)
class SinusoidSignal(InputSignal):
    """u_i(t) = a_i sin(w_i t + phi_i), per channel."""

    amplitude: np.ndarray
    frequency: np.ndarray
    phase: np.ndarray
    shape: ClassVar[SignalShape] = SignalShape.SINUSOID

    def __post_init__(self):
        a = _channel_vector(self.amplitude, "amplitude")
        w = _channel_vector(self.frequency, "frequency")
        phi = _channel_vector(self.phase, "phase")
        size = max(a.size, w.size, phi.size)
        try:
            a, w, phi = (np.broadcast_to(x, (size,)).copy() for x in (a, w, phi))
        except ValueError as e:
            raise ValueError(f"Sinusoid parameters have mismatched lengths: {e}") from e
        if np.any(w <= 0):
            raise ValueError(f"Angular frequencies must be positive, got {w}")
        object.__setattr__(self, "amplitude", a)
        object.__setattr__(self, "frequency", w)
        object.__setattr__(self, "phase", phi)

    @property
    def channels(self) -> int:
        return self.amplitude.size

    @property
    def label(self) -> str:
        if np.all(self.frequency == self.frequency[0]):
            return f"sin_w{self.frequency[0]:g}"
        return "sinusoid"

    def sample(self, times, left: bool = False) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        return self.amplitude * np.sin(np.outer(times, self.frequency) + self.phase)

    def mean(self, t_f: float) -> np.ndarray:
        _check_horizon(t_f)
        a, w, phi = self.amplitude, self.frequency, self.phase
        return a * (np.cos(phi) - np.cos(w * t_f + phi)) / (w * t_f)

    def energy(self, t_f: float) -> float:
        _check_horizon(t_f)
        a, w, phi = self.amplitude, self.frequency, self.phase
        # integral of sin^2 = t/2 - sin(2(wt + phi)) / (4w)
        per_channel = t_f / 2 - (np.sin(2 * (w * t_f + phi)) - np.sin(2 * phi)) / (
            4 * w
        )
        return float(np.sum(a**2 * per_channel))

    def broadcast(self, channels: int) -> "SinusoidSignal":
        self._check_broadcast(channels)
        return SinusoidSignal(
            np.resize(self.amplitude, channels),
            np.resize(self.frequency, channels),
            np.resize(self.phase, channels),
        )


@dataclass(frozen=True, eq=False)
class ExponentialDecaySignal(InputSignal):
    """u_i(t) = a_i exp(-k_i t) with k_i > 0."""

    amplitude: np.ndarray
    rate: np.ndarray
    shape: ClassVar[SignalShape] = SignalShape.EXPONENTIAL_DECAY

    def __post_init__(self):
        a = _channel_vector(self.amplitude, "amplitude")
        k = _channel_vector(self.rate, "rate")
        size = max(a.size, k.size)
        try:
            a, k = (np.broadcast_to(x, (size,)).copy() for x in (a, k))
        except ValueError as e:
            raise ValueError(f"Decay parameters have mismatched lengths: {e}") from e
        if np.any(k <= 0):
            raise ValueError(f"Decay rates must be positive, got {k}")
        object.__setattr__(self, "amplitude", a)
        object.__setattr__(self, "rate", k)

    @property
    def channels(self) -> int:
        return self.amplitude.size

    @property
    def label(self) -> str:
        if np.all(self.rate == self.rate[0]):
            return f"exp_k{self.rate[0]:g}"
        return "exponential_decay"

    def sample(self, times, left: bool = False) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        return self.amplitude * np.exp(-np.outer(times, self.rate))

    def mean(self, t_f: float) -> np.ndarray:
        _check_horizon(t_f)
        k = self.rate
        return self.amplitude * -np.expm1(-k * t_f) / (k * t_f)

    def energy(self, t_f: float) -> float:
        _check_horizon(t_f)
        k = self.rate
        return float(np.sum(self.amplitude**2 * -np.expm1(-2 * k * t_f) / (2 * k)))

    def broadcast(self, channels: int) -> "ExponentialDecaySignal":
        self._check_broadcast(channels)
        return ExponentialDecaySignal(
            np.resize(self.amplitude, channels), np.resize(self.rate, channels)
        )


@dataclass(frozen=True, eq=False)
class PiecewiseConstantSignal(InputSignal):
    """Right-continuous step signal.

    `values[0]` holds on [0, breakpoints[0]), `values[i]` on
    [breakpoints[i-1], breakpoints[i]) and the last row after the final
    breakpoint.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    shape: ClassVar[SignalShape] = SignalShape.PIECEWISE_CONSTANT

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float).ravel()
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.shape[0] != bp.size + 1:
            raise ValueError(
                f"Need {bp.size + 1} value rows for {bp.size} breakpoints, "
                f"got {values.shape[0]}"
            )
        if bp.size and (bp[0] <= 0 or np.any(np.diff(bp) <= 0)):
            raise ValueError("Breakpoints must be positive and strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("values has non-finite entries")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", values)

    @property
    def channels(self) -> int:
        return self.values.shape[1]

    def sample(self, times, left: bool = False) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        side = "left" if left else "right"
        return self.values[np.searchsorted(self.breakpoints, times, side=side)]

    def _pieces(self, t_f: float):
        inner = self.breakpoints[self.breakpoints < t_f]
        edges = np.concatenate(([0.0], inner, [t_f]))
        durations = np.diff(edges)
        return durations, self.values[: durations.size]

    def mean(self, t_f: float) -> np.ndarray:
        _check_horizon(t_f)
        durations, values = self._pieces(t_f)
        return durations @ values / t_f

    def energy(self, t_f: float) -> float:
        _check_horizon(t_f)
        durations, values = self._pieces(t_f)
        return float(durations @ np.sum(values**2, axis=1))

    def broadcast(self, channels: int) -> "PiecewiseConstantSignal":
        self._check_broadcast(channels)
        values = self.values
        if self.channels == 1:
            values = np.repeat(values, channels, axis=1)
        return PiecewiseConstantSignal(self.breakpoints, values)


def signal_mean(u: InputSignal, t_f: float) -> np.ndarray:
    return u.mean(t_f)


def signal_energy(u: InputSignal, t_f: float) -> float:
    return u.energy(t_f)


def is_admissible(u: InputSignal, t_f: float, grid: Optional[int] = None) -> bool:
    """Check sup ||u(t)||_inf <= 1 on a uniform grid over [0, t_f]."""
    _check_horizon(t_f)
    if grid is None:
        grid = config_section("model", "admissibility_grid", ADMISSIBILITY_GRID)
    times = np.linspace(0.0, t_f, int(grid))
    peak = max(
        float(np.max(np.abs(u.sample(times)))),
        float(np.max(np.abs(u.sample(times, left=True)))),
    )
    return peak <= 1.0 + ADMISSIBILITY_SLACK


def require_admissible(u: InputSignal, t_f: float) -> None:
    if not is_admissible(u, t_f):
        raise InadmissibleSignalError(f"Signal {u.label} exceeds |u|_inf <= 1")


def check_unit_box(vector: Sequence[float], name: str = "mean") -> np.ndarray:
    """Return `vector` as an array, rejecting entries outside [-1, 1]."""
    arr = np.atleast_1d(np.asarray(vector, dtype=float))
    if arr.size and np.max(np.abs(arr)) > 1.0 + ADMISSIBILITY_SLACK:
        raise InadmissibleSignalError(
            f"{name} {arr} is outside the unit infinity-norm ball"
        )
    return arr
