"""Experiments and figure tables"""

from pipeline.experiments import (
    CoincidenceStats,
    ConjectureReport,
    coincidence_experiment,
    conjecture_search,
    normal_ci,
)
from pipeline.figures import (
    classify_mirror_point,
    classify_third_state,
    fig1_frame,
    fig2_frame,
    fig3_frame,
)

__all__ = [
    "CoincidenceStats",
    "ConjectureReport",
    "classify_mirror_point",
    "classify_third_state",
    "coincidence_experiment",
    "conjecture_search",
    "fig1_frame",
    "fig2_frame",
    "fig3_frame",
    "normal_ci",
]
