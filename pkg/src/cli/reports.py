"""Single-task energy report."""

from typing import Optional

import numpy as np

from src.common.utils import LOG
from src.constants.resilience import ExpressionClass
from src.driftless import (
    driftless_energies,
    feasibility_driftless,
    resilience_bound_driftless,
    uncontrolled_gain_bounded,
)
from src.model.loader import ModelBundle
from src.model.types import EnergyReport, ReportedQuantity, SystemKind
from src.nonlinear import (
    feasibility_malfunctioning,
    feasibility_nominal,
    malfunctioning_energy_approx,
    resilience_bound_1act,
    resilience_bound_general,
    v_bound_at_partition,
    worst_case_gap,
)

_EXACT = {
    "equality": ExpressionClass.EXACT_EQUALITY,
    "bound": ExpressionClass.EXACT_UPPER_BOUND,
}
_APPROXIMATE = {
    "equality": ExpressionClass.APPROXIMATE_EQUALITY,
    "bound": ExpressionClass.APPROXIMATE_UPPER_BOUND,
}


def build_report(
    bundle: ModelBundle, t_f: Optional[float] = None, R: Optional[float] = None
) -> EnergyReport:
    """Evaluate every energy for the model's task.

    Driftless models use the exact expressions. Other models evaluate the
    approximate ones at the response gap v (zero or a v_bar box vertex)
    that maximizes worst-case total minus nominal energy.

    Args:
        bundle: Loaded model
        t_f: Final time override
        R: Radius for the resilience bound; the task's R, else ||x_tilde||_2

    Returns:
        EnergyReport
    """
    system, partition, task = bundle
    if t_f is not None:
        task = type(task)(x0=task.x0, x_tg=task.x_tg, t_f=t_f, R=task.R)
    R = task.radius if R is None else float(R)
    if R < 0:
        raise ValueError(f"R must be non-negative, got {R}")
    t_f = task.t_f
    B, B_c, B_uc = partition.B, partition.B_c, partition.B_uc
    x_tilde = task.x_tilde
    p = partition.p

    gain_bounded = uncontrolled_gain_bounded(B_c, B_uc)
    if not gain_bounded:
        LOG.warning(
            "B_c^+ B_uc amplifies the uncontrolled input beyond the worst-case "
            "budget; worst-case expressions may not dominate actual totals"
        )

    if system.kind == SystemKind.DRIFTLESS:
        classes = _EXACT
        v_bar = 0.0
    else:
        classes = _APPROXIMATE
        v_bar = v_bound_at_partition(system, partition, t_f).v_bar

    point = worst_case_gap(B, B_c, B_uc, x_tilde, t_f, v_bar)
    sign = point.worst_sign if point.worst_sign is not None else 1
    u_uc_mean = np.full(p, float(sign))
    if point.degenerate:
        LOG.warning("Worst-case sign is degenerate (zero cross term); using +1")

    if system.kind == SystemKind.DRIFTLESS:
        energies = driftless_energies(B, B_c, B_uc, x_tilde, t_f, u_uc_mean)
        e_malf = energies.e_malf
    else:
        e_malf = malfunctioning_energy_approx(
            B_c, B_uc, x_tilde, t_f, point.v, u_uc_mean
        )
    e_total = e_malf + t_f * float(u_uc_mean @ u_uc_mean)

    if p == 1:
        worst_class = classes["equality"]
        if system.kind == SystemKind.DRIFTLESS:
            r_a = resilience_bound_driftless(B, B_c, B_uc, t_f, R)
        else:
            r_a = resilience_bound_1act(B, B_c, B_uc, t_f, R, v_bar, system.n)
    else:
        worst_class = classes["bound"]
        r_a = resilience_bound_general(B, B_c, B_uc, t_f, R, v_bar, system.n)

    feasibility = {
        "driftless": feasibility_driftless(B, x_tilde, t_f),
        "nominal": feasibility_nominal(B, x_tilde, t_f, v_bar),
        "malfunctioning": feasibility_malfunctioning(B_c, B_uc, x_tilde, t_f, v_bar),
    }
    if not all(feasibility.values()):
        LOG.warning("Task is not feasible under every check: %s", feasibility)

    return EnergyReport(
        model_name=system.name,
        kind=system.kind,
        t_f=t_f,
        R=R,
        e_nominal=ReportedQuantity(point.e_nominal, classes["equality"]),
        e_malfunctioning=ReportedQuantity(e_malf, classes["equality"]),
        e_total=ReportedQuantity(e_total, classes["equality"]),
        e_worst_total=ReportedQuantity(point.e_worst_total, worst_class),
        r_a_bound=ReportedQuantity(r_a, classes["bound"]),
        v_bar=v_bar,
        v_used=point.v,
        uncontrolled_mean=u_uc_mean,
        worst_sign=sign,
        degenerate=point.degenerate,
        gain_bounded=gain_bounded,
        feasibility=feasibility,
    )
