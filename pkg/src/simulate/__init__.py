"""Integration, uncontrolled-input families and reference oracles."""

from .integrator import IntegrationError, Trajectory, integrate, resolve_step
from .oracles import (
    OracleError,
    brute_force_constant_min,
    brute_force_opt_tf,
    enumerate_feasibility_malfunctioning,
    enumerate_feasibility_nominal,
    linear_reference_terminal,
    sampled_energy,
)
from .signal_sweep import DEFAULT_SIGNAL_FAMILY, default_family, signal_sweep

__all__ = [
    "DEFAULT_SIGNAL_FAMILY",
    "IntegrationError",
    "OracleError",
    "Trajectory",
    "brute_force_constant_min",
    "brute_force_opt_tf",
    "default_family",
    "enumerate_feasibility_malfunctioning",
    "enumerate_feasibility_nominal",
    "integrate",
    "linear_reference_terminal",
    "resolve_step",
    "sampled_energy",
    "signal_sweep",
]
