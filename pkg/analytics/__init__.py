"""Closed forms, bounds and support identification"""

from analytics.bounds import (
    BoundsReport,
    InequalityCheck,
    bound_fidelity,
    bound_fidelity_pruned,
    bound_renes,
    bound_renes_pruned,
    bound_sqrt_sum,
    bound_sqrt_sum_pruned,
    bound_trace_norm,
    bound_trace_norm_pruned,
    bounds_report,
    equiprobable_conjecture_margin,
    lower_sqrt_sum,
    mirror_bound_gap,
    mirror_renes_bound,
    mirror_renes_bound_pruned,
    pgm_inequality_qubit_triple,
)
from analytics.closed_forms import (
    equidistant_pgm_direct,
    equidistant_popt,
    helstrom_mixed,
    helstrom_two,
    mirror_pgm_plus_success,
    mirror_pgm_success,
    mirror_popt_in_region,
    mirror_region_condition,
    mirror_region_threshold,
    pgm_plus_success,
    pgm_success,
)
from analytics.support import (
    SupportEstimate,
    ZeroForcingResult,
    estimate_support,
    extract_support,
    optimize_superset_weights,
    subset_of_support,
    superset_of_support,
    zero_forcing_check,
)
from solver.povm import pgm

__all__ = [
    "BoundsReport",
    "InequalityCheck",
    "SupportEstimate",
    "ZeroForcingResult",
    "bound_fidelity",
    "bound_fidelity_pruned",
    "bound_renes",
    "bound_renes_pruned",
    "bound_sqrt_sum",
    "bound_sqrt_sum_pruned",
    "bound_trace_norm",
    "bound_trace_norm_pruned",
    "bounds_report",
    "equidistant_pgm_direct",
    "equidistant_popt",
    "equiprobable_conjecture_margin",
    "estimate_support",
    "extract_support",
    "helstrom_mixed",
    "helstrom_two",
    "lower_sqrt_sum",
    "mirror_bound_gap",
    "mirror_pgm_plus_success",
    "mirror_pgm_success",
    "mirror_popt_in_region",
    "mirror_region_condition",
    "mirror_region_threshold",
    "mirror_renes_bound",
    "mirror_renes_bound_pruned",
    "optimize_superset_weights",
    "pgm",
    "pgm_inequality_qubit_triple",
    "pgm_plus_success",
    "pgm_success",
    "subset_of_support",
    "superset_of_support",
    "zero_forcing_check",
]
