"""
Monte Carlo Experiments for the Quantum State Discrimination Toolkit
Support-coincidence statistics over seeded random instances and the
equiprobable-conjecture search
"""

import multiprocessing
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.stats import norm

from analytics.bounds import equiprobable_conjecture_margin
from analytics.support import estimate_support, extract_support
from sampling.random_instances import seeded_instance
from solver.optimizer import solve_optimal
from utils.config import DEFAULT_CONFIG
from utils.exceptions import InvalidInput, QsdError
from utils.helpers import chunks, format_index_set
from utils.logger import get_logger

logger = get_logger(__name__)

CI_LEVEL = 0.99
CONJECTURE_SLACK = 1e-9
RATE_NAMES = ["subset_match", "superset_match", "coincide"]


def normal_ci(successes: int, trials: int, level: float = CI_LEVEL) -> Tuple[float, float]:
    """
    Normal-approximation confidence interval for a binomial proportion

    p_hat +/- z sqrt(p_hat (1 - p_hat) / n), clipped to [0, 1]

    Args:
        successes: Number of positive outcomes
        trials: Number of trials, at least 1
        level: Two-sided confidence level

    Returns:
        (low, high)
    """
    if trials < 1:
        raise InvalidInput(f"Need at least one trial, got {trials}")
    rate = successes / trials
    z = norm.ppf(0.5 + level / 2.0)
    half = z * np.sqrt(rate * (1.0 - rate) / trials)
    return max(rate - half, 0.0), min(rate + half, 1.0)


def run_indexed(
    worker: Callable[[int], Dict[str, Any]], instances: int, threads: int, chunk_size: int
) -> pd.DataFrame:
    """Evaluate worker(index) for every index, in a process pool when threads > 1"""
    batches = list(chunks(list(range(instances)), max(chunk_size, 1)))
    batch_worker = partial(_run_batch, worker)
    if threads > 1 and len(batches) > 1:
        with multiprocessing.Pool(threads) as pool:
            results = pool.map(batch_worker, batches)
    else:
        results = [batch_worker(batch) for batch in batches]
    rows = [row for batch in results for row in batch]
    return pd.DataFrame(rows).sort_values("index").reset_index(drop=True)


def _run_batch(worker: Callable[[int], Dict[str, Any]], indices: List[int]) -> List[Dict[str, Any]]:
    return [worker(i) for i in indices]


def support_record(
    index: int,
    seed: int,
    n: int,
    d: int,
    support_settings: Optional[Dict[str, Any]] = None,
    solver_settings: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Subset, superset and solver support of instance `index`

    Returns:
        One row of the per-instance log
    """
    ensemble = seeded_instance(seed, index, n, d)
    result = solve_optimal(ensemble, settings=solver_settings, raise_on_failure=False)
    estimate = estimate_support(
        ensemble, support_settings=support_settings, solver_settings=solver_settings, result=result
    )
    subset, superset, exact = set(estimate.subset), set(estimate.superset), set(estimate.exact)
    sound = subset <= exact <= superset
    if not sound:
        logger.warning(
            f"Support soundness violated at seed={seed} index={index}: subset={sorted(subset)} "
            f"exact={sorted(exact)} superset={sorted(superset)} gap={result.gap:.3e}"
        )
    return {
        "index": index,
        "subset": format_index_set(subset),
        "exact": format_index_set(exact),
        "superset": format_index_set(superset),
        "subset_match": subset == exact,
        "superset_match": superset == exact,
        "coincide": estimate.coincide,
        "sound": sound,
        "ambiguous": bool(estimate.ambiguous),
        "p_opt": result.p_success,
        "gap": result.gap,
        "converged": result.converged,
    }


@dataclass
class CoincidenceStats:
    """Rates at which the subset and superset tests recover the solver support"""

    instances: int
    subset_match_rate: float
    superset_match_rate: float
    coincide_rate: float
    ci99: Dict[str, Tuple[float, float]]
    violations: int = 0
    ambiguous: int = 0
    unconverged: int = 0
    records: pd.DataFrame = field(default_factory=pd.DataFrame, repr=False)

    def rate(self, name: str) -> float:
        return getattr(self, f"{name}_rate")

    def to_frame(self) -> pd.DataFrame:
        """One row per rate with its 99% interval"""
        rows = []
        for name in RATE_NAMES:
            low, high = self.ci99[name]
            rows.append(
                {
                    "rate": name,
                    "value": self.rate(name),
                    "ci_low": low,
                    "ci_high": high,
                    "instances": self.instances,
                }
            )
        return pd.DataFrame(rows, columns=["rate", "value", "ci_low", "ci_high", "instances"])


def coincidence_experiment(
    instances: int,
    n: int = 3,
    d: int = 2,
    seed: int = DEFAULT_CONFIG["experiment"]["seed"],
    threads: int = 1,
    support_settings: Optional[Dict[str, Any]] = None,
    solver_settings: Optional[Dict[str, Any]] = None,
    chunk_size: int = 100,
) -> CoincidenceStats:
    """
    Run estimate_support against the solver on seeded random instances

    Instance i is drawn from its own generator seeded by (seed, i), so the
    statistics do not depend on threads or chunking.

    Args:
        instances: Number of instances, at least 1
        n: States per instance
        d: Hilbert-space dimension
        seed: Root seed
        threads: Worker processes
        support_settings: ``support`` configuration section
        solver_settings: ``solver`` configuration section
        chunk_size: Instances per work item

    Returns:
        CoincidenceStats with the per-instance log in ``records``
    """
    if instances < 1:
        raise InvalidInput(f"Need at least one instance, got {instances}")

    logger.info(f"Coincidence experiment: {instances} instances, N={n}, d={d}, seed={seed}")
    worker = partial(
        support_record,
        seed=seed,
        n=n,
        d=d,
        support_settings=support_settings,
        solver_settings=solver_settings,
    )
    records = run_indexed(worker, instances, threads, chunk_size)

    counts = {name: int(records[name].sum()) for name in RATE_NAMES}
    stats = CoincidenceStats(
        instances=instances,
        subset_match_rate=counts["subset_match"] / instances,
        superset_match_rate=counts["superset_match"] / instances,
        coincide_rate=counts["coincide"] / instances,
        ci99={name: normal_ci(counts[name], instances) for name in RATE_NAMES},
        violations=int((~records["sound"]).sum()),
        ambiguous=int(records["ambiguous"].sum()),
        unconverged=int((~records["converged"]).sum()),
        records=records,
    )

    logger.info(
        f"Coincide rate {stats.coincide_rate:.4f}, subset match {stats.subset_match_rate:.4f}, "
        f"superset match {stats.superset_match_rate:.4f}"
    )
    if stats.violations:
        logger.warning(f"{stats.violations} instances violated subset <= exact <= superset")
    if stats.unconverged:
        logger.warning(f"{stats.unconverged} instances did not reach the solver tolerance")
    return stats


def conjecture_record(
    index: int,
    seed: int,
    n: int,
    d: int,
    pure: bool = False,
    support_settings: Optional[Dict[str, Any]] = None,
    solver_settings: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Conjecture margin of equiprobable instance `index`; margin is None when it cannot be evaluated"""
    threshold = (support_settings or DEFAULT_CONFIG["support"]).get(
        "threshold", DEFAULT_CONFIG["support"]["threshold"]
    )
    ensemble = seeded_instance(seed, index, n, d, pure=pure, equiprobable=True)
    row: Dict[str, Any] = {"seed": seed, "index": index, "support": "", "margin": None, "reason": ""}
    try:
        result = solve_optimal(ensemble, settings=solver_settings, raise_on_failure=False)
        support = extract_support(result.povm, threshold)
        row["support"] = format_index_set(support)
        row["margin"] = equiprobable_conjecture_margin(ensemble, support)
    except QsdError as e:
        logger.debug(f"Conjecture margin unavailable for index {index}: {e}")
        row["reason"] = str(e)
    return row


@dataclass
class ConjectureReport:
    """Outcome of a conjecture search; counterexamples are reproducible from (seed, index)"""

    instances: int
    evaluated: int
    counterexamples: pd.DataFrame
    min_margin: Optional[float] = None


def conjecture_search(
    instances: int,
    n: int = 3,
    d: int = 2,
    seed: int = DEFAULT_CONFIG["experiment"]["seed"],
    threads: int = 1,
    pure: bool = False,
    slack: float = CONJECTURE_SLACK,
    support_settings: Optional[Dict[str, Any]] = None,
    solver_settings: Optional[Dict[str, Any]] = None,
    chunk_size: int = 100,
) -> ConjectureReport:
    """
    Search equiprobable instances for violations of the pruned-PGM inequality

    Counterexamples are reported, never raised.

    Args:
        instances: Number of instances, at least 1
        n: States per instance
        d: Hilbert-space dimension
        seed: Root seed
        threads: Worker processes
        pure: Sample pure states instead of Hilbert-Schmidt mixed states
        slack: Margins below -slack count as counterexamples

    Returns:
        ConjectureReport with columns seed, index, support, margin
    """
    if instances < 1:
        raise InvalidInput(f"Need at least one instance, got {instances}")

    logger.info(f"Conjecture search: {instances} equiprobable instances, N={n}, d={d}, seed={seed}")
    worker = partial(
        conjecture_record,
        seed=seed,
        n=n,
        d=d,
        pure=pure,
        support_settings=support_settings,
        solver_settings=solver_settings,
    )
    records = run_indexed(worker, instances, threads, chunk_size)
    margins = pd.to_numeric(records["margin"], errors="coerce")
    evaluated = int(margins.notna().sum())

    failing = records.loc[margins < -slack, ["seed", "index", "support", "margin"]]
    failing = failing.reset_index(drop=True)
    for row in failing.to_dict("records"):
        logger.warning(
            f"Counterexample at seed={row['seed']} index={row['index']}: "
            f"support={row['support']} margin={row['margin']:.3e}"
        )

    return ConjectureReport(
        instances=instances,
        evaluated=evaluated,
        counterexamples=failing,
        min_margin=float(margins.min()) if evaluated else None,
    )
