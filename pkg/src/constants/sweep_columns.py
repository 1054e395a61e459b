from src.constants.compat import StrEnum


class SweepColumns(StrEnum):
    """String enum for the fixed column names of a resilience sweep CSV.

    Per-signal totals follow these as `total_<signal label>` columns.
    """

    R = "R"
    V_BAR = "v_bar"
    E_NOMINAL = "e_nominal"
    E_WORST_TOTAL = "e_worst_total"
    GAP = "gap"
    R_A_BOUND = "r_a_bound"
    RELATIVE_ERROR = "relative_error"
    FEASIBLE = "feasible"
    FEASIBLE_NOMINAL = "feasible_nominal"
    FEASIBLE_MALFUNCTIONING = "feasible_malfunctioning"
    GAIN_BOUNDED = "gain_bounded"


TOTAL_COLUMN_PREFIX = "total_"
