"""Constants for the resilience computations.

Tolerances below are the fallbacks used when config/config.yaml does not
override them; the enums name the classes of reported quantities and the
CLI exit codes.
"""

from enum import IntEnum

from src.constants.compat import StrEnum

# Pseudoinverse cutoff: singular values below PINV_RCOND * max(rows, cols) * s_max are dropped
PINV_RCOND = 1e-12

# sym_eig rejects input whose asymmetry exceeds this (absolute, on max-abs entries)
SYMMETRY_TOL = 1e-10

# Full-row-rank check: max |M M^+ - I| must not exceed this
FULL_RANK_TOL = 1e-8

# Signals are admissible when sup ||u(t)||_inf <= 1 + ADMISSIBILITY_SLACK on the grid
ADMISSIBILITY_SLACK = 1e-12
ADMISSIBILITY_GRID = 10_000

# Below this D_f + D_g the response-gap bound uses its series limit
SERIES_LIMIT_THRESHOLD = 1e-10

# Lipschitz spot check defaults
LIPSCHITZ_SAMPLES = 1000
LIPSCHITZ_BOX = 10.0

# Fixed-step integrator defaults
INTEGRATOR_STEPS = 1000
CONVERGENCE_TOL = 1e-6

# Oracle search window for the optimal final time
OPT_TF_WINDOW = (1e-3, 1e3)

# CSV float format: 17 significant digits round-trips an IEEE double
CSV_FLOAT_FORMAT = "%.17g"

# Environment variable overriding the integrator step
DT_ENV_VAR = "RESIL_DT"


class ExitCode(IntEnum):
    OK = 0
    INVARIANT_FAILURE = 1
    INPUT_ERROR = 2


class Exactness(StrEnum):
    """Whether a reported quantity relies on the mean-value energy approximation."""

    EXACT = "exact"
    APPROXIMATE = "approximate"


class ExpressionClass(StrEnum):
    """Classification of every reported energy expression.

    Driftless formulas are exact; the nonlinear ones rest on approximating
    an input's energy by t_f times its squared mean.
    """

    EXACT_EQUALITY = "exact_equality"
    EXACT_UPPER_BOUND = "exact_upper_bound"
    APPROXIMATE_EQUALITY = "approximate_equality"
    APPROXIMATE_UPPER_BOUND = "approximate_upper_bound"

    @property
    def exactness(self) -> Exactness:
        if self.value.startswith("exact"):
            return Exactness.EXACT
        return Exactness.APPROXIMATE

    @property
    def is_bound(self) -> bool:
        return self.value.endswith("upper_bound")
