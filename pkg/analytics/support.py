"""
Support Identification for the Quantum State Discrimination Toolkit
Finds which measurement operators of the optimal POVM vanish, from a solved
POVM or from the ensemble alone via the subset and superset tests
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as la
from scipy.optimize import minimize_scalar

from analytics.bounds import bound_sqrt_sum
from ensembles.ensemble import Ensemble
from solver.optimizer import SolveResult, solve_optimal
from solver.povm import Povm
from utils.config import DEFAULT_CONFIG
from utils.exceptions import InvalidInput, InvalidWeights, NotConverged
from utils.logger import get_logger

logger = get_logger(__name__)

SUPPORT_DEFAULTS = DEFAULT_CONFIG["support"]
WEIGHT_SUM_TOL = 1e-9


def extract_support(povm: Povm, tol: float = SUPPORT_DEFAULTS["threshold"]) -> List[int]:
    """
    Indices of nonvanishing operators

    Args:
        povm: Solved measurement
        tol: Trace threshold; tr(E_i) > tol counts as nonvanishing

    Returns:
        Sorted list of indices
    """
    return [int(i) for i in np.flatnonzero(povm.traces() > tol)]


def ambiguous_indices(
    povm: Povm,
    low: float = SUPPORT_DEFAULTS["ambiguous_low"],
    high: float = SUPPORT_DEFAULTS["ambiguous_high"],
) -> List[int]:
    """Indices whose operator trace falls in the band where thresholding is unreliable"""
    traces = povm.traces()
    return [int(i) for i in np.flatnonzero((traces >= low) & (traces <= high))]


def subset_of_support(ensemble: Ensemble) -> List[int]:
    """
    Indices provably in the support

    Dropping state i caps the success probability at tr sqrt(sum_{j != i} sigma~_j^2);
    when that falls below the lower bound [tr sqrt(sum_j sigma~_j^2)]^2, the
    optimal operator for i cannot vanish.

    Returns:
        Sorted list of certified indices
    """
    weighted = ensemble.weighted()
    lower = bound_sqrt_sum(ensemble) ** 2
    certified = []
    for i in range(ensemble.n):
        rest = np.delete(weighted, i, axis=0)
        if rest.shape[0] == 0:
            leave_one_out = 0.0
        else:
            squares = np.einsum("nij,njk->ik", rest, rest)
            w = np.clip(la.eigvalsh(0.5 * (squares + squares.conj().T)), 0.0, None)
            leave_one_out = float(np.sum(np.sqrt(w)))
        if leave_one_out < lower:
            certified.append(i)
    return certified


def _weights_for(index: int, n: int, weights: Optional[np.ndarray]) -> np.ndarray:
    if weights is None:
        return np.full(n - 1, 1.0 / (n - 1))
    return weights[index] if weights.ndim == 2 else weights


def _check_weights(weights, n: int) -> Optional[np.ndarray]:
    if weights is None:
        return None
    w = np.asarray(weights, dtype=float)
    if w.shape not in ((n - 1,), (n, n - 1)):
        raise InvalidWeights(f"Weights need shape ({n - 1},) or ({n}, {n - 1}), got {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise InvalidWeights("Weights must be finite and nonnegative")
    sums = np.atleast_2d(w).sum(axis=1)
    if np.any(np.abs(sums - 1.0) > WEIGHT_SUM_TOL):
        raise InvalidWeights(f"Weights must sum to 1, got {sums.tolist()}")
    return w


def _domination_margin(weighted: np.ndarray, index: int, w: np.ndarray) -> float:
    others = np.delete(weighted, index, axis=0)
    m = np.einsum("n,nij->ij", w, others) - weighted[index]
    return float(la.eigvalsh(0.5 * (m + m.conj().T))[0])


def optimize_superset_weights(
    ensemble: Ensemble, index: int, sweeps: int = 50, tol: float = 1e-12
) -> Tuple[np.ndarray, float]:
    """
    Weights maximizing lambda_min(sum_{j != i} w_j sigma~_j - sigma~_i)

    lambda_min is concave in w, so pairwise transfers of weight between
    coordinates, each a bounded 1-D maximization, climb to the optimum.

    Args:
        ensemble: Problem instance
        index: State i to test for domination
        sweeps: Maximum passes over all coordinate pairs
        tol: Stop when a pass improves the margin by less than this

    Returns:
        (weights of length N-1, achieved margin)
    """
    n = ensemble.n
    if n < 2:
        raise InvalidInput("Weight search needs at least two states")
    weighted = ensemble.weighted()
    w = np.full(n - 1, 1.0 / (n - 1))
    best = _domination_margin(weighted, index, w)

    for _ in range(sweeps):
        start = best
        for a in range(n - 1):
            for b in range(a + 1, n - 1):
                pool = w[a] + w[b]
                if pool <= 0.0:
                    continue

                def negative_margin(t, a=a, b=b, pool=pool):
                    trial = w.copy()
                    trial[a], trial[b] = t, pool - t
                    return -_domination_margin(weighted, index, trial)

                res = minimize_scalar(negative_margin, bounds=(0.0, pool), method="bounded")
                if -res.fun > best:
                    w[a], w[b] = res.x, pool - res.x
                    best = -res.fun
        if best - start < tol:
            break
    return w, best


def superset_of_support(
    ensemble: Ensemble,
    weights=None,
    optimize: bool = False,
    pd_tol: float = SUPPORT_DEFAULTS["pd_tol"],
) -> List[int]:
    """
    Indices that may be in the support

    State i is excluded when sum_{j != i} w_j sigma~_j - sigma~_i is positive
    definite: moving E_i onto the other operators with weights w would then
    raise the success probability.

    Args:
        ensemble: Problem instance
        weights: N-1 weights shared by all i, or an (N, N-1) array; defaults to 1/(N-1)
        optimize: Search the weights per index instead of using them as given
        pd_tol: lambda_min above this counts as positive definite

    Returns:
        Sorted list of indices not excluded

    Raises:
        InvalidWeights: If weights are misshaped, negative or not normalized
    """
    n = ensemble.n
    if n == 1:
        return [0]
    w_all = _check_weights(weights, n)
    weighted = ensemble.weighted()
    kept = []
    for i in range(n):
        if optimize:
            _, margin = optimize_superset_weights(ensemble, i)
        else:
            margin = _domination_margin(weighted, i, _weights_for(i, n, w_all))
        if margin <= pd_tol:
            kept.append(i)
    return kept


@dataclass
class SupportEstimate:
    """Subset and superset of the support, with the solver's support when computed"""

    subset: List[int]
    superset: List[int]
    exact: Optional[List[int]] = None
    ambiguous: List[int] = field(default_factory=list)
    solve_gap: Optional[float] = None

    @property
    def coincide(self) -> bool:
        return self.subset == self.superset

    @property
    def consistent(self) -> bool:
        """subset <= exact <= superset, or subset <= superset without a solve"""
        if not set(self.subset) <= set(self.superset):
            return False
        if self.exact is None:
            return True
        return set(self.subset) <= set(self.exact) <= set(self.superset)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subset": self.subset,
            "superset": self.superset,
            "exact": self.exact,
            "coincide": self.coincide,
            "ambiguous": self.ambiguous,
            "solve_gap": self.solve_gap,
        }


def estimate_support(
    ensemble: Ensemble,
    solve: bool = True,
    support_settings: Optional[Dict[str, Any]] = None,
    solver_settings: Optional[Dict[str, Any]] = None,
    weights=None,
    optimize_weights: bool = False,
    result: Optional[SolveResult] = None,
) -> SupportEstimate:
    """
    Combine the subset test, the superset test and optionally the solver

    When subset and superset coincide the support is determined without
    solving.

    Args:
        ensemble: Problem instance
        solve: Also run the solver and extract its support
        support_settings: ``support`` configuration section
        solver_settings: ``solver`` configuration section
        weights: Superset weights, see superset_of_support()
        optimize_weights: Search superset weights per index
        result: Existing solver result to use instead of solving again

    Returns:
        SupportEstimate
    """
    settings = dict(SUPPORT_DEFAULTS)
    settings.update(support_settings or {})

    estimate = SupportEstimate(
        subset=subset_of_support(ensemble),
        superset=superset_of_support(
            ensemble, weights=weights, optimize=optimize_weights, pd_tol=settings["pd_tol"]
        ),
    )

    if solve or result is not None:
        if result is None:
            try:
                result = solve_optimal(ensemble, settings=solver_settings)
            except NotConverged as e:
                logger.warning(f"Using unconverged solve for support extraction: {e}")
                result = e.result
        estimate.exact = extract_support(result.povm, settings["threshold"])
        estimate.ambiguous = ambiguous_indices(
            result.povm, settings["ambiguous_low"], settings["ambiguous_high"]
        )
        estimate.solve_gap = result.gap

    if not estimate.consistent:
        logger.warning(
            f"Support estimates disagree: subset={estimate.subset}, exact={estimate.exact}, "
            f"superset={estimate.superset}, gap={estimate.solve_gap}"
        )
    return estimate


@dataclass(frozen=True)
class ZeroForcingResult:
    """Optimal value with and without operator `index` held at zero"""

    index: int
    p_opt: float
    p_forced: float

    @property
    def change(self) -> float:
        return self.p_opt - self.p_forced


def zero_forcing_check(
    ensemble: Ensemble, index: int, solver_settings: Optional[Dict[str, Any]] = None
) -> ZeroForcingResult:
    """
    Re-solve with E_index fixed at zero and compare optimal values

    A change below the solver tolerance confirms that the operator vanishes
    at the optimum.
    """
    full = solve_optimal(ensemble, settings=solver_settings)
    forced = solve_optimal(ensemble, forced_zero=[index], settings=solver_settings)
    return ZeroForcingResult(index=int(index), p_opt=full.p_success, p_forced=forced.p_success)


def support_sets_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    return sorted(a) == sorted(b)
