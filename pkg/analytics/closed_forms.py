"""
Closed-Form Results for the Quantum State Discrimination Toolkit
Pretty good measurement, Helstrom values, equidistant and mirror-symmetric
formulas and the mirror region condition
"""

import math
from typing import Iterable, Tuple

import numpy as np
import scipy.linalg as la

from ensembles.constructors import equidistant_triple
from ensembles.ensemble import Ensemble, check_index_set, pure_kets
from linalg.hermitian import sqrt_2x2_levinger, trace_norm
from solver.povm import PINV_RANK_TOL, pgm, pgm_operators, success_probability
from utils.exceptions import InvalidAlpha, InvalidInput, InvalidParameters
from utils.helpers import clipped_sqrt
from utils.logger import get_logger

logger = get_logger(__name__)

RANGE_TOL = 1e-12
REGION_TOL = 1e-12


def pgm_success(ensemble: Ensemble) -> float:
    """Success probability of the pretty good measurement"""
    return success_probability(ensemble, pgm(ensemble))


def pgm_plus_success(ensemble: Ensemble, support: Iterable[int]) -> float:
    """
    Pretty good measurement restricted to a support set

    Only the states in `support` enter S = sum_{i in I+} sigma~_i; operators
    outside the set are zero.

    Args:
        ensemble: Problem instance
        support: Nonempty index set I+

    Returns:
        sum over I+ of tr(sigma~_i S^{-1/2} sigma~_i S^{-1/2})

    Raises:
        InvalidSupport: If the set is empty or out of range
    """
    idx = check_index_set(ensemble, support)
    mask = np.zeros(ensemble.n, dtype=bool)
    mask[idx] = True
    weighted = ensemble.weighted()
    ops = pgm_operators(weighted, PINV_RANK_TOL, mask)
    return float(np.real(np.einsum("nij,nji->", weighted[mask], ops[mask])))


def _require_pair(ensemble: Ensemble):
    if ensemble.n != 2:
        raise InvalidInput(f"Two-state formula needs N=2, got N={ensemble.n}")


def helstrom_two(ensemble: Ensemble) -> float:
    """
    Optimal success probability for two pure states

    1/2 (1 + sqrt(1 - 4 p1 p2 |<psi1|psi2>|^2))

    Raises:
        InvalidInput: If N != 2
        NotPure: If a state is mixed
    """
    _require_pair(ensemble)
    kets = pure_kets(ensemble)
    overlap_sq = abs(np.vdot(kets[0], kets[1])) ** 2
    p1, p2 = ensemble.priors
    return 0.5 * (1.0 + clipped_sqrt(1.0 - 4.0 * p1 * p2 * overlap_sq))


def helstrom_mixed(ensemble: Ensemble) -> float:
    """Optimal success probability for any two states, 1/2 (1 + ||sigma~_1 - sigma~_2||_1)"""
    _require_pair(ensemble)
    return 0.5 * (1.0 + trace_norm(ensemble.weighted_state(0) - ensemble.weighted_state(1)))


def _check_alpha(alpha: float) -> float:
    if not (0.5 - RANGE_TOL <= alpha <= 1.0 + RANGE_TOL):
        raise InvalidAlpha(f"alpha={alpha} outside [1/2, 1]")
    return min(max(alpha, 0.5), 1.0)


def equidistant_popt(alpha: float) -> float:
    """
    Optimal success probability of the equidistant triple

    (2 sqrt(3) / 9) sqrt(1 - alpha^2) + 1/3
    """
    alpha = _check_alpha(alpha)
    return 2.0 * math.sqrt(3.0) / 9.0 * clipped_sqrt(1.0 - alpha * alpha) + 1.0 / 3.0


def equidistant_pgm_direct(alpha: float) -> float:
    """
    PGM success of the equidistant triple using the 2x2 closed-form root of S

    The triple is geometrically uniform, so this equals equidistant_popt().
    """
    alpha = _check_alpha(alpha)
    ensemble = equidistant_triple(alpha)
    root = sqrt_2x2_levinger(ensemble.average_state())
    inv_root = la.pinvh(root)
    weighted = ensemble.weighted()
    return float(np.real(np.einsum("nij,jk,nkl,li->", weighted, inv_root, weighted, inv_root)))


def check_mirror_parameters(p: float, theta: float) -> Tuple[float, float]:
    if not (-RANGE_TOL <= p <= 0.5 + RANGE_TOL):
        raise InvalidParameters(f"p={p} outside [0, 1/2]")
    if not (-RANGE_TOL <= theta <= math.pi / 2.0 + RANGE_TOL):
        raise InvalidParameters(f"theta={theta} outside [0, pi/2]")
    return min(max(p, 0.0), 0.5), min(max(theta, 0.0), math.pi / 2.0)


def mirror_pgm_success(p: float, theta: float) -> float:
    """
    PGM success probability of the mirror-symmetric family

    2p (sqrt(p) cos^2 t / sqrt(1 - 2p sin^2 t) + sin t / sqrt(2))^2
        + (1 - 2p)^2 / (1 - 2p sin^2 t)

    The expression is extended by continuity to (p, t) = (1/2, pi/2).
    """
    p, theta = check_mirror_parameters(p, theta)
    c, s = math.cos(theta), math.sin(theta)
    denom = 1.0 - 2.0 * p * s * s
    if denom <= 0.0:
        # both states collapse onto |1>
        return p
    first = math.sqrt(p) * c * c / math.sqrt(denom) + s / math.sqrt(2.0)
    return 2.0 * p * first * first + (1.0 - 2.0 * p) ** 2 / denom


def mirror_region_threshold(theta: float) -> float:
    """Smallest p for which the optimal measurement ignores the axis state"""
    _, theta = check_mirror_parameters(0.0, theta)
    c, s = math.cos(theta), math.sin(theta)
    return 1.0 / (2.0 + c * (c + s))


def mirror_region_condition(p: float, theta: float) -> bool:
    """True iff p >= 1 / (2 + cos t (cos t + sin t)), so that I+ = {0, 1}"""
    p, theta = check_mirror_parameters(p, theta)
    return p >= mirror_region_threshold(theta) - REGION_TOL


def mirror_pgm_plus_success(p: float, theta: float) -> float:
    """PGM restricted to the mirrored pair, p (cos t + sin t)^2"""
    p, theta = check_mirror_parameters(p, theta)
    return p * (math.cos(theta) + math.sin(theta)) ** 2


def mirror_popt_in_region(p: float, theta: float) -> float:
    """
    Optimal success probability inside the region, p (1 + sin 2t)

    Raises:
        InvalidParameters: If (p, t) lies outside the region
    """
    if not mirror_region_condition(p, theta):
        raise InvalidParameters(f"(p={p}, theta={theta}) outside the two-state region")
    return p * (1.0 + math.sin(2.0 * theta))
