"""
Optimal Measurement Solver for the Quantum State Discrimination Toolkit
Monotone fixed-point iteration for the minimum-error POVM with a certified
duality gap, finished by an active-set step that sets vanishing operators
exactly to zero
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Set, Tuple

import numpy as np

from ensembles.ensemble import Ensemble
from linalg.hermitian import pinv_sqrt
from solver.povm import (
    Certificate,
    Povm,
    certificate_from_stack,
    helstrom_operators,
    pgm_operators,
)
from utils.config import DEFAULT_CONFIG
from utils.exceptions import InvalidInput, NotConverged
from utils.logger import get_logger

logger = get_logger(__name__)

MONOTONE_SLACK = 1e-12


def _traces(ops: np.ndarray) -> np.ndarray:
    return np.real(np.trace(ops, axis1=1, axis2=2))


@dataclass(frozen=True)
class SolveResult:
    """Measurement found by the solver together with its certificate"""

    povm: Povm
    p_success: float
    upper_bound: float
    gap: float
    iterations: int
    converged: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p_success": self.p_success,
            "upper_bound": self.upper_bound,
            "gap": self.gap,
            "iterations": self.iterations,
            "converged": self.converged,
        }


class OptimalMeasurementSolver:
    """Fixed-point optimizer for the minimum-error discrimination problem"""

    def __init__(self, settings: Optional[Dict[str, Any]] = None, **overrides):
        """
        Initialize the solver

        Args:
            settings: The ``solver`` configuration section; defaults when None
            **overrides: Individual keys (tol, max_iter, rank_tol, check_every,
                init_mix, polish_trace, settle_low, settle_high) taking
                precedence over settings
        """
        merged = dict(DEFAULT_CONFIG["solver"])
        merged.update(settings or {})
        merged.update({k: v for k, v in overrides.items() if v is not None})

        self.tol = float(merged["tol"])
        self.max_iter = int(merged["max_iter"])
        self.rank_tol = float(merged["rank_tol"])
        self.check_every = max(int(merged["check_every"]), 1)
        self.init_mix = float(merged["init_mix"])
        self.polish_trace = float(merged["polish_trace"])
        self.settle_low = float(merged["settle_low"])
        self.settle_high = float(merged["settle_high"])

        if self.tol <= 0:
            raise InvalidInput(f"Solver tolerance must be positive, got {self.tol}")
        if self.max_iter < 0:
            raise InvalidInput(f"max_iter must be nonnegative, got {self.max_iter}")
        if self.settle_low > self.settle_high:
            raise InvalidInput(
                f"settle_low={self.settle_low} exceeds settle_high={self.settle_high}"
            )

    def _initial_operators(self, weighted: np.ndarray, active: np.ndarray) -> np.ndarray:
        ops = pgm_operators(weighted, self.rank_tol, active)
        s = np.where(active[:, None, None], weighted, 0.0).sum(axis=0)
        d = s.shape[0]
        root = pinv_sqrt(s, self.rank_tol)
        projector = root @ s @ root
        if np.real(np.trace(projector)) < d - 0.5:
            # S is singular; start strictly inside the cone
            uniform = np.eye(d) / int(active.sum())
            ops = (1.0 - self.init_mix) * ops + self.init_mix * active[:, None, None] * uniform
        return ops

    def _step(self, weighted: np.ndarray, ops: np.ndarray, active: np.ndarray) -> np.ndarray:
        d = weighted.shape[1]
        sandwiched = weighted @ ops @ weighted
        lam = sandwiched.sum(axis=0)
        lam = 0.5 * (lam + lam.conj().T)
        root = pinv_sqrt(lam, self.rank_tol)
        new_ops = root @ sandwiched @ root
        kernel = np.eye(d) - root @ lam @ root

        contributions = np.real(np.einsum("nij,nji->n", weighted, ops)) * active
        contributions = np.clip(contributions, 0.0, None)
        total = contributions.sum()
        share = contributions / total if total > 0 else active / active.sum()
        new_ops = new_ops + share[:, None, None] * kernel
        new_ops[~active] = 0.0
        return 0.5 * (new_ops + np.conj(np.swapaxes(new_ops, -1, -2)))

    def _unsettled(self, ops: np.ndarray, active: np.ndarray) -> bool:
        """True while a free operator's trace sits inside the ambiguous band"""
        traces = _traces(ops)[active]
        return bool(np.any((traces >= self.settle_low) & (traces < self.settle_high)))

    def _polish(
        self,
        weighted: np.ndarray,
        ops: np.ndarray,
        active: np.ndarray,
        budget: int,
        tried: Set[frozenset],
    ) -> Tuple[Optional[Tuple[np.ndarray, Certificate]], int]:
        """
        Zero the operators with the smallest traces and re-solve the rest

        Candidates are the free operators with trace below polish_trace; the
        k smallest are dropped for k = all candidates down to 1. A restricted
        optimum is kept only if its certificate also closes within tol on the
        current free set. Rejected sets are remembered in `tried`.

        Returns:
            ((ops, certificate) or None, iterations spent)
        """
        if self.polish_trace <= 0.0:
            return None, 0
        traces = _traces(ops)
        order = [int(i) for i in np.argsort(traces) if active[i] and traces[i] < self.polish_trace]
        n_free = int(active.sum())
        spent = 0
        for k in range(len(order), 0, -1):
            zeroed = frozenset(order[:k])
            if zeroed in tried or k >= n_free:
                continue
            tried.add(zeroed)
            restricted = active.copy()
            restricted[list(zeroed)] = False
            sub_ops, _, sub_iterations = self._run(weighted, restricted, budget - spent)
            spent += sub_iterations
            cert = certificate_from_stack(weighted, sub_ops, active)
            if cert.gap <= self.tol:
                logger.debug(f"Operators {sorted(zeroed)} set to zero, gap {cert.gap:.3e}")
                return (sub_ops, cert), spent
            logger.debug(f"Zeroing {sorted(zeroed)} rejected, gap {cert.gap:.3e}")
        return None, spent

    def _run(
        self, weighted: np.ndarray, active: np.ndarray, budget: int
    ) -> Tuple[np.ndarray, Certificate, int]:
        """
        Optimize the free operators within an iteration budget

        Returns:
            (operator stack, certificate on the free set, iterations used)
        """
        if active.sum() <= 2:
            ops = helstrom_operators(weighted, active)
            return ops, certificate_from_stack(weighted, ops, active), 0

        ops = self._initial_operators(weighted, active)
        cert = certificate_from_stack(weighted, ops, active)
        previous = cert.p_success
        iterations = 0
        tried: Set[frozenset] = set()

        while True:
            polished, spent = self._polish(weighted, ops, active, budget - iterations, tried)
            iterations += spent
            if polished is not None:
                return polished[0], polished[1], iterations
            settled = cert.gap <= self.tol and not self._unsettled(ops, active)
            if settled or iterations >= budget:
                return ops, cert, iterations

            for _ in range(min(self.check_every, budget - iterations)):
                ops = self._step(weighted, ops, active)
                iterations += 1
                current = float(np.real(np.einsum("nij,nji->", weighted, ops)))
                if current < previous - MONOTONE_SLACK:
                    logger.warning(
                        f"Success probability decreased at iteration {iterations}: "
                        f"{previous:.14f} -> {current:.14f}"
                    )
                previous = current
            cert = certificate_from_stack(weighted, ops, active)

    def solve(
        self,
        ensemble: Ensemble,
        forced_zero: Iterable[int] = (),
        raise_on_failure: bool = True,
    ) -> SolveResult:
        """
        Compute an optimal measurement and certify it

        Args:
            ensemble: Problem instance
            forced_zero: Indices whose operators are held at zero; the
                certificate then bounds the restricted problem
            raise_on_failure: Raise NotConverged when the gap stays above tol

        Returns:
            SolveResult with gap <= tol on success

        Raises:
            NotConverged: If max_iter is exhausted first (partial result attached)
        """
        weighted = ensemble.weighted()
        n = ensemble.n
        active = np.ones(n, dtype=bool)
        for i in forced_zero:
            if not 0 <= int(i) < n:
                raise InvalidInput(f"Forced index {i} out of range for N={n}")
            active[int(i)] = False
        if not active.any():
            raise InvalidInput("At least one operator must remain free")

        logger.debug(f"Solver start: N={n}, d={ensemble.dim}, free={int(active.sum())}")
        ops, cert, iterations = self._run(weighted, active, self.max_iter)

        converged = cert.gap <= self.tol
        result = SolveResult(
            povm=Povm.from_stack(ops),
            p_success=min(max(cert.p_success, 0.0), 1.0),
            upper_bound=cert.upper_bound,
            gap=cert.gap,
            iterations=iterations,
            converged=converged,
        )

        if not converged:
            message = f"Gap {cert.gap:.3e} above tol {self.tol:.1e} after {iterations} iterations"
            logger.warning(message)
            if raise_on_failure:
                raise NotConverged(message, result=result)
        else:
            logger.debug(f"Solver converged in {iterations} iterations, gap {cert.gap:.3e}")
        return result


def solve_optimal(
    ensemble: Ensemble,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    forced_zero: Iterable[int] = (),
    settings: Optional[Dict[str, Any]] = None,
    raise_on_failure: bool = True,
) -> SolveResult:
    """
    Optimal minimum-error measurement of an ensemble

    Args:
        ensemble: Problem instance
        tol: Certified gap to reach (default 1e-8)
        max_iter: Iteration budget (default 100000)
        forced_zero: Indices whose operators are fixed at zero
        settings: ``solver`` configuration section
        raise_on_failure: Raise NotConverged instead of returning a partial result

    Returns:
        SolveResult
    """
    solver = OptimalMeasurementSolver(settings, tol=tol, max_iter=max_iter)
    return solver.solve(ensemble, forced_zero=forced_zero, raise_on_failure=raise_on_failure)
