"""Exact energy computations for linear driftless systems."""

from .energies import (
    DriftlessEnergies,
    WorstCaseTotal,
    cross_term,
    driftless_energies,
    feasibility_driftless,
    least_squares_control,
    malfunction_metric,
    malfunctioning_energy_driftless,
    nominal_energy_driftless,
    optimal_final_time,
    resilience_bound_driftless,
    total_energy_driftless,
    uncontrolled_gain_bounded,
    uncontrolled_spectral_term,
    worst_case_total_bound_driftless,
    worst_case_total_exact_1act,
)

__all__ = [
    "DriftlessEnergies",
    "WorstCaseTotal",
    "cross_term",
    "driftless_energies",
    "feasibility_driftless",
    "least_squares_control",
    "malfunction_metric",
    "malfunctioning_energy_driftless",
    "nominal_energy_driftless",
    "optimal_final_time",
    "resilience_bound_driftless",
    "total_energy_driftless",
    "uncontrolled_gain_bounded",
    "uncontrolled_spectral_term",
    "worst_case_total_bound_driftless",
    "worst_case_total_exact_1act",
]
