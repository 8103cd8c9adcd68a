"""
Figure Data for the Quantum State Discrimination Toolkit
Tabulates the equidistant curve, the mirror-family inequality map and the
qubit-triple support map as DataFrames ready for CSV export
"""

import math
from functools import partial
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from analytics.bounds import mirror_bound_gap, pgm_inequality_qubit_triple
from analytics.closed_forms import (
    equidistant_pgm_direct,
    equidistant_popt,
    mirror_region_condition,
)
from analytics.support import extract_support
from ensembles.constructors import equidistant_triple
from ensembles.ensemble import DensityMatrix, fidelity_matrix, new_ensemble
from pipeline.experiments import run_indexed
from solver.optimizer import solve_optimal
from utils.config import DEFAULT_CONFIG
from utils.exceptions import InvalidInput, NotConverged, QsdError
from utils.helpers import format_index_set
from utils.logger import get_logger

logger = get_logger(__name__)

INEQUALITY_SLACK = 1e-12
OVERLAP_TIE_TOL = 1e-12

# Bloch directions (polar, azimuth) of the two fixed states of the qubit-triple map
FIXED_PAIR = ((math.pi / 2.0, 0.0), (math.pi / 2.0, math.pi / 2.0))


def _fig1_record(index: int, alphas: np.ndarray, solver_settings) -> Dict[str, Any]:
    alpha = float(alphas[index])
    closed = equidistant_popt(alpha)
    try:
        result = solve_optimal(equidistant_triple(alpha), settings=solver_settings)
    except NotConverged as e:
        result = e.result
    return {
        "index": index,
        "alpha": alpha,
        "closed_form": closed,
        "pgm_direct": equidistant_pgm_direct(alpha),
        "solver": result.p_success,
        "discrepancy": abs(result.p_success - closed),
        "gap": result.gap,
        "converged": result.converged,
    }


def fig1_frame(
    alpha_min: float = 0.5,
    alpha_max: float = 1.0,
    steps: int = 51,
    solver_settings: Optional[Dict[str, Any]] = None,
    threads: int = 1,
) -> pd.DataFrame:
    """
    Optimal success of the equidistant triple against alpha

    Args:
        alpha_min: Smallest overlap, at least 1/2
        alpha_max: Largest overlap, at most 1
        steps: Number of alpha values; 1 gives the single row alpha_min
        solver_settings: ``solver`` configuration section
        threads: Worker processes

    Returns:
        DataFrame with columns alpha, closed_form, pgm_direct, solver,
        discrepancy, gap, converged

    Raises:
        InvalidAlpha: If an endpoint lies outside [1/2, 1]
        InvalidInput: If alpha_min > alpha_max or steps < 1
    """
    if steps < 1:
        raise InvalidInput(f"steps must be at least 1, got {steps}")
    if alpha_min > alpha_max:
        raise InvalidInput(f"alpha_min={alpha_min} exceeds alpha_max={alpha_max}")
    equidistant_popt(alpha_min)
    equidistant_popt(alpha_max)

    alphas = np.linspace(alpha_min, alpha_max, steps)
    worker = partial(_fig1_record, alphas=alphas, solver_settings=solver_settings)
    frame = run_indexed(worker, steps, threads, chunk_size=max(steps // max(threads, 1), 1))
    frame = frame.drop(columns=["index"])
    logger.info(f"Equidistant curve: {steps} points, max discrepancy {frame['discrepancy'].max():.3e}")
    return frame


def classify_mirror_point(p: float, theta: float, slack: float = INEQUALITY_SLACK) -> Dict[str, Any]:
    """
    Region flag, inequality flag and colour of one mirror-family point

    black: inside the two-state region and the pruned PGM bound is at least
    as tight as the full one; red: inside the region but the pruned bound is
    looser; neither: outside the region.
    """
    region = mirror_region_condition(p, theta)
    try:
        gap = mirror_bound_gap(p, theta)
    except QsdError as e:
        logger.debug(f"Bound gap undefined at p={p}, theta={theta}: {e}")
        gap = float("nan")
    holds = bool(gap >= -slack) if not math.isnan(gap) else False

    if not region:
        tag = "neither"
    elif holds:
        tag = "black"
    else:
        tag = "red"
    return {"theta": theta, "p": p, "region": region, "inequality": holds, "gap": gap, "tag": tag}


def _fig2_record(index: int, grid: int, slack: float) -> Dict[str, Any]:
    i, j = divmod(index, grid)
    theta = math.pi / 2.0 * i / (grid - 1)
    p = 0.5 * j / (grid - 1)
    row = classify_mirror_point(p, theta, slack)
    row["index"] = index
    return row


def fig2_frame(grid: int = 400, slack: float = INEQUALITY_SLACK, threads: int = 1) -> pd.DataFrame:
    """
    Mirror-family map over theta in [0, pi/2] and p in [0, 1/2]

    Args:
        grid: Points per axis, at least 2
        slack: Tolerance on the bound gap
        threads: Worker processes

    Returns:
        DataFrame with columns theta, p, region, inequality, gap, tag
    """
    if grid < 2:
        raise InvalidInput(f"grid must be at least 2, got {grid}")
    worker = partial(_fig2_record, grid=grid, slack=slack)
    frame = run_indexed(worker, grid * grid, threads, chunk_size=grid)
    frame = frame[["theta", "p", "region", "inequality", "gap", "tag"]]
    logger.info(
        f"Mirror map: {grid}x{grid} points, {int((frame['tag'] == 'black').sum())} black, "
        f"{int((frame['tag'] == 'red').sum())} red"
    )
    return frame


def qubit_ket(polar: float, azimuth: float) -> np.ndarray:
    """Pure qubit state with Bloch direction (polar, azimuth)"""
    return np.array([math.cos(polar / 2.0), np.exp(1j * azimuth) * math.sin(polar / 2.0)])


def classify_third_state(
    polar: float,
    azimuth: float,
    solver_settings: Optional[Dict[str, Any]] = None,
    threshold: float = DEFAULT_CONFIG["support"]["threshold"],
) -> Dict[str, Any]:
    """
    Tag the equiprobable triple whose third state points along (polar, azimuth)

    G: the solver support is {0, 1}; B: states 0 and 1 have the smallest
    pairwise overlap (ties included) but the support differs; R: the rest.
    """
    kets = [qubit_ket(*FIXED_PAIR[0]), qubit_ket(*FIXED_PAIR[1]), qubit_ket(polar, azimuth)]
    ensemble = new_ensemble(np.full(3, 1.0 / 3.0), [DensityMatrix.from_ket(k) for k in kets])

    overlaps = fidelity_matrix(ensemble).normalized
    pair = overlaps[0, 1]
    minimal = pair <= min(overlaps[0, 2], overlaps[1, 2]) + OVERLAP_TIE_TOL

    result = solve_optimal(ensemble, settings=solver_settings, raise_on_failure=False)
    support = extract_support(result.povm, threshold)
    check = pgm_inequality_qubit_triple(ensemble, [0, 1])

    if support == [0, 1]:
        tag = "G"
    elif minimal:
        tag = "B"
    else:
        tag = "R"
    if tag == "G" and not minimal:
        logger.warning(f"Support {{0, 1}} without minimal pair overlap at ({polar:.4f}, {azimuth:.4f})")

    return {
        "polar": polar,
        "azimuth": azimuth,
        "x": math.sin(polar) * math.cos(azimuth),
        "y": math.sin(polar) * math.sin(azimuth),
        "z": math.cos(polar),
        "tag": tag,
        "support": format_index_set(support),
        "pgm": check.lhs,
        "inequality_rhs": check.rhs,
        "inequality": check.holds(INEQUALITY_SLACK),
        "p_opt": result.p_success,
        "gap": result.gap,
        "converged": result.converged,
    }


def _fig3_record(index: int, grid: int, solver_settings, threshold: float) -> Dict[str, Any]:
    i, j = divmod(index, grid)
    polar = math.pi * i / (grid - 1)
    azimuth = 2.0 * math.pi * j / grid
    row = classify_third_state(polar, azimuth, solver_settings, threshold)
    row["index"] = index
    return row


def fig3_frame(
    grid: int = 40,
    solver_settings: Optional[Dict[str, Any]] = None,
    support_settings: Optional[Dict[str, Any]] = None,
    threads: int = 1,
) -> pd.DataFrame:
    """
    Support map of the third state over a (polar, azimuth) grid on the Bloch sphere

    Args:
        grid: Polar samples in [0, pi]; the same number of azimuths in [0, 2 pi)
        solver_settings: ``solver`` configuration section
        support_settings: ``support`` configuration section
        threads: Worker processes

    Returns:
        DataFrame ordered by grid index, one row per direction
    """
    if grid < 2:
        raise InvalidInput(f"grid must be at least 2, got {grid}")
    threshold = (support_settings or {}).get("threshold", DEFAULT_CONFIG["support"]["threshold"])
    worker = partial(
        _fig3_record, grid=grid, solver_settings=solver_settings, threshold=threshold
    )
    frame = run_indexed(worker, grid * grid, threads, chunk_size=max(grid, 1))
    counts = frame["tag"].value_counts().to_dict()
    failing = int((~frame.loc[frame["tag"] == "G", "inequality"].astype(bool)).sum())
    logger.info(f"Qubit-triple map: {grid}x{grid} directions, tags {counts}")
    if failing:
        logger.warning(f"{failing} directions with support {{0, 1}} violate the PGM inequality")
    return frame.drop(columns=["index"])
