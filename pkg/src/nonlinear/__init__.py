"""Approximate energies and response-gap bounds for nonlinear systems."""

from .energies import (
    GapPoint,
    MeanControl,
    malfunctioning_energy_approx,
    mean_control_malfunctioning,
    mean_control_nominal,
    nominal_energy_approx,
    resilience_bound_1act,
    resilience_bound_general,
    total_energy_approx,
    worst_case_total_1act,
    worst_case_total_bound,
    worst_case_gap,
)
from .feasibility import (
    box_vertices,
    feasibility_malfunctioning,
    feasibility_nominal,
    response_gap_candidates,
)
from .gronwall import (
    VBound,
    empirical_v,
    v_bound,
    v_bound_at_partition,
    v_bound_within_radius,
)

__all__ = [
    "GapPoint",
    "MeanControl",
    "VBound",
    "box_vertices",
    "empirical_v",
    "feasibility_malfunctioning",
    "feasibility_nominal",
    "malfunctioning_energy_approx",
    "mean_control_malfunctioning",
    "mean_control_nominal",
    "nominal_energy_approx",
    "resilience_bound_1act",
    "resilience_bound_general",
    "response_gap_candidates",
    "total_energy_approx",
    "v_bound",
    "v_bound_at_partition",
    "v_bound_within_radius",
    "worst_case_total_1act",
    "worst_case_gap",
    "worst_case_total_bound",
]
