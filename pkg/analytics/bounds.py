"""
Bounds on Optimal Success Probability for the Quantum State Discrimination Toolkit
PGM-based, fidelity, square-root-sum and trace-norm bounds, their
support-pruned refinements, and the report that collects them
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from analytics.closed_forms import (
    check_mirror_parameters,
    mirror_pgm_success,
    pgm_plus_success,
    pgm_success,
)
from ensembles.ensemble import Ensemble, check_index_set, fidelity_matrix, pruned_ensemble
from linalg.hermitian import mat_sqrt_psd, trace_norm
from utils.exceptions import InvalidInput, NotApplicable, QsdError
from utils.helpers import clipped_sqrt
from utils.logger import get_logger

logger = get_logger(__name__)

RANGE_TOL = 1e-12
TIE_TOL = 1e-12

UPPER_BOUND_NAMES = [
    "pgm_renes",
    "pgm_renes_pruned",
    "fidelity",
    "fidelity_pruned",
    "sqrt_sum",
    "sqrt_sum_pruned",
    "trace_norm",
    "trace_norm_pruned",
]
LOWER_BOUND_NAMES = ["lower_sqrt_sum"]


def bound_renes(p_pgm: float, n: int) -> float:
    """
    Upper bound on P_opt from the PGM success probability

    sqrt((n-1)/n (P_PGM - 1/n)) + 1/n

    Args:
        p_pgm: PGM success probability, in [1/n, 1]
        n: Number of states

    Raises:
        InvalidInput: If p_pgm lies outside [1/n, 1]
    """
    if n < 1:
        raise InvalidInput(f"Need n >= 1, got {n}")
    if p_pgm < 1.0 / n - RANGE_TOL or p_pgm > 1.0 + RANGE_TOL:
        raise InvalidInput(f"PGM success {p_pgm:.12f} outside [1/{n}, 1]")
    return clipped_sqrt((n - 1.0) / n * (p_pgm - 1.0 / n)) + 1.0 / n


def bound_renes_pruned(ensemble: Ensemble, support: Iterable[int]) -> float:
    """
    PGM bound applied to the pruned ensemble and scaled back by p+

    p+ {sqrt((k-1)/k (P_PGM+ / p+ - 1/k)) + 1/k} with k = |I+|

    Raises:
        InvalidSupport: If the set is empty or out of range
        InvalidInput: If P_PGM+ / p+ < 1/k
    """
    idx = check_index_set(ensemble, support)
    p_plus = float(ensemble.priors[idx].sum())
    if p_plus <= 0.0:
        raise InvalidInput(f"Support {idx} carries zero prior mass")
    return p_plus * bound_renes(pgm_plus_success(ensemble, idx) / p_plus, len(idx))


def bound_fidelity(ensemble: Ensemble) -> float:
    """
    1 - sum_{i<j} F_ij^2 with the unnormalized fidelity matrix

    Raises:
        NotPure: If a state is mixed
    """
    f = fidelity_matrix(ensemble).unnormalized
    return 1.0 - float(np.sum(np.triu(f, k=1) ** 2))


def bound_fidelity_pruned(ensemble: Ensemble, support: Iterable[int]) -> float:
    """
    Fidelity bound on the pruned ensemble times p+, equal to p+ - sum_{i<j in I+} F_ij^2 / p+

    Raises:
        NotPure: If a state is mixed
    """
    p_plus, pruned = pruned_ensemble(ensemble, support)
    return p_plus * bound_fidelity(pruned)


def _sqrt_sum(weighted: np.ndarray) -> float:
    squares = np.einsum("nij,njk->ik", weighted, weighted)
    return float(np.real(np.trace(mat_sqrt_psd(squares))))


def bound_sqrt_sum(ensemble: Ensemble) -> float:
    """tr sqrt(sum_i sigma~_i^2)"""
    return _sqrt_sum(ensemble.weighted())


def bound_sqrt_sum_pruned(ensemble: Ensemble, support: Iterable[int]) -> float:
    """tr sqrt(sum_{i in I+} sigma~_i^2), never above bound_sqrt_sum()"""
    idx = check_index_set(ensemble, support)
    return _sqrt_sum(ensemble.weighted()[idx])


def lower_sqrt_sum(ensemble: Ensemble) -> float:
    """Lower bound on P_opt, [tr sqrt(sum_i sigma~_i^2)]^2"""
    return bound_sqrt_sum(ensemble) ** 2


def bound_trace_norm(ensemble: Ensemble) -> Tuple[float, int]:
    """
    1/2 + 1/2 min_j {sum_i ||sigma~_i - sigma~_j||_1 - p_j (N - 2)}

    Returns:
        (bound, j_hat) where j_hat is the minimizing index, smallest on ties
    """
    weighted = ensemble.weighted()
    n = ensemble.n
    norms = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            norms[i, j] = norms[j, i] = trace_norm(weighted[i] - weighted[j])
    scores = norms.sum(axis=0) - ensemble.priors * (n - 2)
    best = float(scores.min())
    j_hat = int(np.flatnonzero(scores <= best + TIE_TOL)[0])
    return 0.5 + 0.5 * best, j_hat


def bound_trace_norm_pruned(
    ensemble: Ensemble, support: Iterable[int], j_hat: Optional[int] = None
) -> float:
    """
    Trace-norm bound over I+ together with j_hat, for equiprobable ensembles

    Evaluates to (1/2N)[min_{j in K} sum_{i in K} ||sigma_i - sigma_j||_1 + 2]
    with K = I+ u {j_hat}.

    Args:
        ensemble: Equiprobable problem instance
        support: Nonempty index set I+
        j_hat: Minimizer of the full bound; computed when omitted

    Raises:
        NotApplicable: If the priors are not all equal
    """
    if not ensemble.is_equiprobable():
        raise NotApplicable("Pruned trace-norm bound needs equiprobable states")
    idx = check_index_set(ensemble, support)
    if j_hat is None:
        _, j_hat = bound_trace_norm(ensemble)
    keep = sorted(set(idx) | {int(j_hat)})
    p_plus, pruned = pruned_ensemble(ensemble, keep)
    value, _ = bound_trace_norm(pruned)
    return p_plus * value


def mirror_renes_bound(p: float, theta: float) -> float:
    """Upper bound from the full PGM of the mirror family"""
    return bound_renes(mirror_pgm_success(p, theta), 3)


def mirror_renes_bound_pruned(p: float, theta: float) -> float:
    """Upper bound from the PGM on the mirrored pair, p (sqrt(2 cos t sin t) + 1)"""
    p, theta = check_mirror_parameters(p, theta)
    c, s = math.cos(theta), math.sin(theta)
    return p * (clipped_sqrt(2.0 * c * s) + 1.0)


def mirror_bound_gap(p: float, theta: float) -> float:
    """
    Full minus pruned PGM bound for the mirror family

    Nonnegative exactly where pruning to the support tightens the bound.
    """
    return mirror_renes_bound(p, theta) - mirror_renes_bound_pruned(p, theta)


@dataclass(frozen=True)
class InequalityCheck:
    """Both sides of an inequality lhs >= rhs"""

    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def holds(self, slack: float = 1e-12) -> bool:
        return self.margin >= -slack


def pgm_inequality_qubit_triple(ensemble: Ensemble, support: Iterable[int]) -> InequalityCheck:
    """
    P_PGM >= (sqrt(1 - |<psi_a|psi_b>|^2) + 2) / 6 for an equiprobable pure qubit triple

    {a, b} is the two-element support. The inequality is the equiprobable
    conjecture specialized to this configuration.

    Raises:
        NotApplicable: Unless N=3, d=2, priors are equal and |I+| = 2
        NotPure: If a state is mixed
    """
    idx = check_index_set(ensemble, support)
    if ensemble.n != 3 or ensemble.dim != 2 or not ensemble.is_equiprobable() or len(idx) != 2:
        raise NotApplicable("Needs an equiprobable qubit triple with a two-element support")
    fhat = fidelity_matrix(ensemble).normalized
    overlap = float(fhat[idx[0], idx[1]])
    rhs = (clipped_sqrt(1.0 - overlap * overlap) + 2.0) / 6.0
    return InequalityCheck(lhs=pgm_success(ensemble), rhs=rhs)


def equiprobable_conjecture_margin(ensemble: Ensemble, support: Iterable[int]) -> float:
    """
    (N - 1)(P_PGM - 1/N) - (|I+| - 1)(P_PGM+ - 1/N)

    Nonnegative whenever the pruned PGM bound is at least as tight as the full one.

    Raises:
        NotApplicable: If the priors are not all equal
    """
    if not ensemble.is_equiprobable():
        raise NotApplicable("Conjecture margin is defined for equiprobable states")
    idx = check_index_set(ensemble, support)
    n = ensemble.n
    full = (n - 1) * (pgm_success(ensemble) - 1.0 / n)
    pruned = (len(idx) - 1) * (pgm_plus_success(ensemble, idx) - 1.0 / n)
    return full - pruned


@dataclass(frozen=True)
class BoundEntry:
    """One evaluated bound; value is None when the bound is absent"""

    name: str
    value: Optional[float]
    applicable: bool
    reason: str = ""


@dataclass
class BoundsReport:
    """Every bound evaluated on one ensemble"""

    entries: Dict[str, BoundEntry] = field(default_factory=dict)
    support: Optional[List[int]] = None

    def add(self, name: str, value: Optional[float], reason: str = ""):
        self.entries[name] = BoundEntry(
            name=name, value=value, applicable=value is not None, reason=reason
        )

    def value(self, name: str) -> Optional[float]:
        entry = self.entries.get(name)
        return entry.value if entry else None

    def upper_bounds(self) -> Dict[str, float]:
        return {
            name: self.entries[name].value
            for name in UPPER_BOUND_NAMES
            if name in self.entries and self.entries[name].applicable
        }

    def min_upper(self) -> float:
        values = self.upper_bounds().values()
        return min(values) if values else 1.0

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "name": e.name,
                "value": e.value,
                "applicable": e.applicable,
                "reason": e.reason,
            }
            for e in self.entries.values()
        ]
        return pd.DataFrame(rows, columns=["name", "value", "applicable", "reason"])


def bounds_report(ensemble: Ensemble, support: Optional[Iterable[int]] = None) -> BoundsReport:
    """
    Evaluate every applicable bound

    Pruned entries need a support set; without one, or when a bound does not
    apply, the entry is recorded as absent with the reason.

    Args:
        ensemble: Problem instance
        support: Optional index set I+

    Returns:
        BoundsReport
    """
    idx = sorted(set(int(i) for i in support)) if support is not None else None
    report = BoundsReport(support=idx)
    j_hat: Optional[int] = None

    def trace_norm_full() -> float:
        nonlocal j_hat
        value, j_hat = bound_trace_norm(ensemble)
        return value

    evaluations = [
        ("pgm_renes", lambda: bound_renes(pgm_success(ensemble), ensemble.n), False),
        ("pgm_renes_pruned", lambda: bound_renes_pruned(ensemble, idx), True),
        ("fidelity", lambda: bound_fidelity(ensemble), False),
        ("fidelity_pruned", lambda: bound_fidelity_pruned(ensemble, idx), True),
        ("sqrt_sum", lambda: bound_sqrt_sum(ensemble), False),
        ("sqrt_sum_pruned", lambda: bound_sqrt_sum_pruned(ensemble, idx), True),
        ("trace_norm", trace_norm_full, False),
        ("trace_norm_pruned", lambda: bound_trace_norm_pruned(ensemble, idx, j_hat), True),
        ("lower_sqrt_sum", lambda: lower_sqrt_sum(ensemble), False),
    ]

    for name, evaluate, needs_support in evaluations:
        if needs_support and idx is None:
            report.add(name, None, "no support set given")
            continue
        try:
            report.add(name, float(evaluate()))
        except QsdError as e:
            logger.debug(f"Bound {name} not applicable: {e}")
            report.add(name, None, str(e))

    return report
