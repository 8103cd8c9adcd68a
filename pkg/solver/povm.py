"""
POVM Types for the Quantum State Discrimination Toolkit
Measurement operators, success probability, the pretty good measurement and
the dual optimality certificate
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence

import numpy as np
import scipy.linalg as la

from ensembles.ensemble import Ensemble
from linalg.hermitian import as_hermitian, pinv_sqrt
from utils.exceptions import InvalidInput, InvalidMatrix, WrongDimension
from utils.logger import get_logger

logger = get_logger(__name__)

POVM_TOL = 1e-8
PROBABILITY_CLAMP = 1e-12
PINV_RANK_TOL = 1e-12
HELSTROM_KERNEL_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _hermitize(stack: np.ndarray) -> np.ndarray:
    return 0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2)))


@dataclass(frozen=True)
class Povm:
    """N Hermitian operators on a d-dimensional space, stacked as (N, d, d)"""

    operators: np.ndarray

    @classmethod
    def from_operators(cls, operators: Iterable) -> "Povm":
        """
        Wrap a list of operators, symmetrizing each

        Positivity and completeness are not enforced here; see validate_povm().

        Raises:
            InvalidMatrix: On empty input, shape mismatch or non-Hermitian operators
        """
        ops = [as_hermitian(op) for op in operators]
        if not ops:
            raise InvalidMatrix("POVM needs at least one operator")
        shapes = {op.shape for op in ops}
        if len(shapes) != 1:
            raise InvalidMatrix(f"POVM operators have mixed shapes {sorted(shapes)}")
        stack = np.stack(ops)
        stack.flags.writeable = False
        return cls(operators=stack)

    @classmethod
    def from_stack(cls, stack: np.ndarray) -> "Povm":
        arr = _hermitize(np.asarray(stack, dtype=complex))
        arr.flags.writeable = False
        return cls(operators=arr)

    @property
    def n(self) -> int:
        return self.operators.shape[0]

    @property
    def dim(self) -> int:
        return self.operators.shape[1]

    def traces(self) -> np.ndarray:
        return np.real(np.trace(self.operators, axis1=1, axis2=2))

    def __getitem__(self, i: int) -> np.ndarray:
        return self.operators[i]


def _check_compatible(ensemble: Ensemble, povm: Povm):
    if povm.n != ensemble.n:
        raise InvalidInput(f"POVM has {povm.n} operators for {ensemble.n} states")
    if povm.dim != ensemble.dim:
        raise InvalidInput(f"POVM acts on d={povm.dim}, ensemble on d={ensemble.dim}")


def success_probability(ensemble: Ensemble, povm: Povm) -> float:
    """
    Average probability of a correct guess, sum_i p_i tr(sigma_i E_i)

    Args:
        ensemble: Problem instance
        povm: Measurement with one operator per state

    Returns:
        Success probability; rounding within 1e-12 outside [0, 1] is clamped

    Raises:
        InvalidInput: If counts or dimensions differ
    """
    _check_compatible(ensemble, povm)
    value = float(np.real(np.einsum("nij,nji->", ensemble.weighted(), povm.operators)))
    if -PROBABILITY_CLAMP <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + PROBABILITY_CLAMP:
        return 1.0
    return value


def povm_diagnostics(povm: Povm) -> Dict[str, float]:
    """Smallest eigenvalue over all operators and the completeness residual"""
    min_eig = min(float(la.eigvalsh(op)[0]) for op in povm.operators)
    residual = povm.operators.sum(axis=0) - np.eye(povm.dim)
    return {
        "min_eigenvalue": min_eig,
        "completeness_error": float(np.max(np.abs(residual))),
    }


def validate_povm(povm: Povm, tol: float = POVM_TOL) -> bool:
    """
    Check positivity of every operator and sum_i E_i = I, both at tol

    Returns:
        True if valid; failures are logged with their diagnostics
    """
    diag = povm_diagnostics(povm)
    ok = diag["min_eigenvalue"] >= -tol and diag["completeness_error"] <= tol
    if not ok:
        logger.debug(
            f"Invalid POVM: min eigenvalue {diag['min_eigenvalue']:.3e}, "
            f"completeness error {diag['completeness_error']:.3e}"
        )
    return ok


def pgm_operators(
    weighted: np.ndarray,
    rank_tol: float = PINV_RANK_TOL,
    active: Optional[Sequence[bool]] = None,
) -> np.ndarray:
    """
    Pretty good measurement on stacked weighted states

    E_i = S^{-1/2} w_i S^{-1/2} with S = sum of active w_i; the complement of
    range(S) is shared equally by the active operators and inactive ones are 0.

    Args:
        weighted: (N, d, d) prior-weighted states
        rank_tol: Relative rank cutoff for the pseudo-inverse
        active: Optional mask of operators allowed to be nonzero

    Returns:
        (N, d, d) operator stack
    """
    n, d, _ = weighted.shape
    mask = np.ones(n, dtype=bool) if active is None else np.asarray(active, dtype=bool)
    w = np.where(mask[:, None, None], weighted, 0.0)
    s = w.sum(axis=0)
    root = pinv_sqrt(s, rank_tol)
    ops = root @ w @ root
    kernel = np.eye(d) - root @ s @ root
    ops = ops + mask[:, None, None] * kernel / max(int(mask.sum()), 1)
    return _hermitize(ops)


def pgm(ensemble: Ensemble, rank_tol: float = PINV_RANK_TOL) -> Povm:
    """
    Pretty good (square-root) measurement of an ensemble

    Args:
        ensemble: Problem instance
        rank_tol: Relative rank cutoff used for S^{-1/2}

    Returns:
        Complete POVM; I - Pi_range(S) is split equally among the operators
    """
    return Povm.from_stack(pgm_operators(ensemble.weighted(), rank_tol))


def helstrom_operators(
    weighted: np.ndarray, active: Optional[Sequence[bool]] = None
) -> np.ndarray:
    """
    Optimal measurement when at most two operators are free

    One free operator gets the identity. For two, the heavier state a gets the
    projector onto the nonnegative eigenspace of w_a - w_b and the other state
    the complement, so a zero-trace difference leaves the lighter operator at 0.

    Args:
        weighted: (N, d, d) prior-weighted states
        active: Mask of operators allowed to be nonzero, one or two entries set

    Returns:
        (N, d, d) operator stack

    Raises:
        InvalidInput: If more than two or no operators are free
    """
    n, d, _ = weighted.shape
    mask = np.ones(n, dtype=bool) if active is None else np.asarray(active, dtype=bool)
    idx = np.flatnonzero(mask)
    if not 1 <= idx.size <= 2:
        raise InvalidInput(
            f"Closed-form measurement needs one or two free operators, got {idx.size}"
        )

    ops = np.zeros((n, d, d), dtype=complex)
    if idx.size == 1:
        ops[idx[0]] = np.eye(d)
        return ops

    a, b = int(idx[0]), int(idx[1])
    if np.real(np.trace(weighted[b])) > np.real(np.trace(weighted[a])):
        a, b = b, a
    w, v = la.eigh(_hermitize(weighted[a] - weighted[b]))
    cols = v[:, w >= -HELSTROM_KERNEL_TOL]
    ops[a] = cols @ cols.conj().T
    ops[b] = np.eye(d) - ops[a]
    return _hermitize(ops)


@dataclass(frozen=True)
class Certificate:
    """Dual bound obtained from a candidate measurement"""

    p_success: float
    upper_bound: float
    gap: float
    slack: float


def certificate_from_stack(
    weighted: np.ndarray, operators: np.ndarray, active: Optional[Sequence[bool]] = None
) -> Certificate:
    """
    Dual certificate for stacked operators

    Gamma = Herm(sum_i w_i E_i) shifted by c = max_i max(0, -lambda_min(Gamma - w_i))
    dominates every active w_i, so tr(Gamma) + d c bounds the optimum.
    """
    n, d, _ = weighted.shape
    mask = np.ones(n, dtype=bool) if active is None else np.asarray(active, dtype=bool)
    z = np.einsum("nij,njk->ik", weighted, operators)
    gamma = 0.5 * (z + z.conj().T)
    slack = 0.0
    for i in np.flatnonzero(mask):
        slack = max(slack, -float(la.eigvalsh(gamma - weighted[i])[0]))
    p = float(np.real(np.trace(gamma)))
    # P_opt <= 1 for every ensemble
    upper = max(min(p + d * slack, 1.0), p)
    return Certificate(p_success=p, upper_bound=upper, gap=upper - p, slack=slack)


def certify(ensemble: Ensemble, povm: Povm) -> Certificate:
    """
    Certified upper bound on the optimal success probability

    Valid for any POVM; the gap shrinks to zero only at an optimum.

    Raises:
        InvalidInput: If counts or dimensions differ
    """
    _check_compatible(ensemble, povm)
    return certificate_from_stack(ensemble.weighted(), povm.operators)


def reflect_povm(povm: Povm) -> Povm:
    """Qubit reflection E_i -> X E_i^T X, matching reflect_ensemble"""
    if povm.dim != 2:
        raise WrongDimension(f"Reflection is defined for qubits, got d={povm.dim}")
    return Povm.from_stack(PAULI_X @ np.swapaxes(povm.operators, -1, -2) @ PAULI_X)
