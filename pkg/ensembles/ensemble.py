"""
Ensemble Representation for the Quantum State Discrimination Toolkit
Density matrices, prior-weighted ensembles, Gram and fidelity matrices
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from linalg.hermitian import as_complex_matrix, as_hermitian, eig_hermitian, is_psd
from utils.exceptions import InvalidEnsemble, InvalidMatrix, InvalidSupport, NotPure
from utils.logger import get_logger

logger = get_logger(__name__)

STATE_TOL = 1e-9
PRIOR_SUM_TOL = 1e-9
PURITY_TOL = 1e-9
PHASE_EPS = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


def canonical_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its first nonzero coordinate is real positive"""
    v = np.asarray(vec, dtype=complex)
    nonzero = np.flatnonzero(np.abs(v) > PHASE_EPS)
    if nonzero.size == 0:
        return v.copy()
    lead = v[nonzero[0]]
    return v * (np.abs(lead) / lead)


@dataclass(frozen=True)
class DensityMatrix:
    """
    Unit-trace PSD operator, optionally remembering the ket it came from

    Keeping the ket lets gram() reproduce the phases a state was built with
    instead of the canonical phase of its dominant eigenvector.
    """

    matrix: np.ndarray
    ket: Optional[np.ndarray] = field(default=None, compare=False)

    @classmethod
    def from_matrix(cls, m, tol: float = STATE_TOL) -> "DensityMatrix":
        """
        Validate and wrap a density matrix

        Raises:
            InvalidMatrix: If m is not Hermitian, PSD and unit-trace within tol
        """
        h = as_hermitian(m)
        if not is_psd(h, tol):
            raise InvalidMatrix("Density matrix is not positive semidefinite")
        trace = float(np.real(np.trace(h)))
        if abs(trace - 1.0) > tol:
            raise InvalidMatrix(f"Density matrix trace is {trace:.12f}, expected 1")
        return cls(matrix=_frozen(h))

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        """Pure state |psi><psi| from a (not necessarily normalized) ket"""
        v = np.asarray(ket, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(v))
        if v.size == 0 or not np.isfinite(norm) or norm == 0.0:
            raise InvalidMatrix("Ket must be a nonzero finite vector")
        v = v / norm
        return cls(matrix=_frozen(np.outer(v, v.conj())), ket=_frozen(v))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_pure(self, tol: float = PURITY_TOL) -> bool:
        if self.ket is not None:
            return True
        top = eig_hermitian(self.matrix).eigenvalues[0]
        return bool(top >= 1.0 - tol)

    def pure_vector(self) -> np.ndarray:
        """
        Normalized ket of a pure state

        Uses the stored ket when present, otherwise the dominant eigenvector
        with its first nonzero coordinate made real positive.

        Raises:
            NotPure: If the state has rank > 1 within tolerance
        """
        if self.ket is not None:
            return np.array(self.ket)
        eig = eig_hermitian(self.matrix)
        if eig.eigenvalues[0] < 1.0 - PURITY_TOL:
            raise NotPure(f"State is mixed (largest eigenvalue {eig.eigenvalues[0]:.9f})")
        return canonical_phase(eig.eigenvectors[:, 0])


StateLike = Union[DensityMatrix, np.ndarray, Sequence]


def as_density_matrix(state: StateLike) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    return DensityMatrix.from_matrix(state)


@dataclass(frozen=True)
class Ensemble:
    """
    Prior-weighted list of states sharing one Hilbert-space dimension

    Use new_ensemble() to construct; it validates priors and dimensions.
    """

    priors: np.ndarray
    states: Tuple[DensityMatrix, ...]

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def weighted(self) -> np.ndarray:
        """Stacked prior-weighted states, shape (N, d, d)"""
        return np.stack([p * s.matrix for p, s in zip(self.priors, self.states)])

    def weighted_state(self, i: int) -> np.ndarray:
        return self.priors[i] * self.states[i].matrix

    def average_state(self) -> np.ndarray:
        """S = sum_i p_i sigma_i"""
        return self.weighted().sum(axis=0)

    def is_pure(self) -> bool:
        return all(s.is_pure() for s in self.states)

    def is_equiprobable(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.priors - 1.0 / self.n) <= tol))


def new_ensemble(priors: Iterable[float], states: Iterable[StateLike]) -> Ensemble:
    """
    Build a validated ensemble

    Args:
        priors: Nonnegative a priori probabilities summing to 1
        states: Density matrices (DensityMatrix or array-like)

    Returns:
        Ensemble

    Raises:
        InvalidEnsemble: On length or dimension mismatch, negative prior or bad sum
    """
    prior_arr = np.asarray(list(priors), dtype=float)
    try:
        state_list = [as_density_matrix(s) for s in states]
    except InvalidMatrix as e:
        raise InvalidEnsemble(f"Invalid state: {e}")

    if prior_arr.ndim != 1 or prior_arr.size == 0:
        raise InvalidEnsemble("Ensemble needs at least one prior")
    if prior_arr.size != len(state_list):
        raise InvalidEnsemble(
            f"Got {prior_arr.size} priors for {len(state_list)} states"
        )
    if not np.all(np.isfinite(prior_arr)):
        raise InvalidEnsemble("Priors must be finite")
    if np.any(prior_arr < 0):
        raise InvalidEnsemble(f"Negative prior in {prior_arr.tolist()}")
    total = float(prior_arr.sum())
    if abs(total - 1.0) > PRIOR_SUM_TOL:
        raise InvalidEnsemble(f"Priors sum to {total:.12f}, expected 1")
    dims = {s.dim for s in state_list}
    if len(dims) != 1:
        raise InvalidEnsemble(f"States have mixed dimensions {sorted(dims)}")

    prior_arr.flags.writeable = False
    return Ensemble(priors=prior_arr, states=tuple(state_list))


@dataclass(frozen=True)
class FidelityMatrix:
    """Unnormalized F_ij = |G_ij| and normalized F^_ij = F_ij / sqrt(F_ii F_jj)"""

    unnormalized: np.ndarray
    normalized: np.ndarray

    @classmethod
    def from_unnormalized(cls, f) -> "FidelityMatrix":
        """
        Derive the normalized matrix from an unnormalized one

        Rows with a zero diagonal entry get F^_ii = 1 and zero off-diagonals.
        """
        fu = np.asarray(f, dtype=float)
        if fu.ndim != 2 or fu.shape[0] != fu.shape[1]:
            raise InvalidMatrix(f"Fidelity matrix must be square, got {fu.shape}")
        diag = np.sqrt(np.clip(np.diag(fu), 0.0, None))
        outer = np.outer(diag, diag)
        with np.errstate(divide="ignore", invalid="ignore"):
            fn = np.where(outer > 0, fu / np.where(outer > 0, outer, 1.0), 0.0)
        np.fill_diagonal(fn, 1.0)
        return cls(unnormalized=fu, normalized=fn)


def pure_kets(ensemble: Ensemble) -> np.ndarray:
    """
    Normalized kets of a pure ensemble, shape (N, d)

    Raises:
        NotPure: If any state is mixed
    """
    return np.stack([s.pure_vector() for s in ensemble.states])


def gram(ensemble: Ensemble) -> np.ndarray:
    """
    Gram matrix G_ij = sqrt(p_i p_j) <psi_i|psi_j>

    Raises:
        NotPure: If any state is mixed
    """
    kets = pure_kets(ensemble)
    amp = np.sqrt(ensemble.priors)
    g = np.outer(amp, amp) * (kets.conj() @ kets.T)
    return 0.5 * (g + g.conj().T)


def fidelity_matrix(ensemble: Ensemble) -> FidelityMatrix:
    """
    Pairwise fidelities of a pure ensemble

    The normalized matrix is taken from the kets directly so zero-prior
    states still get meaningful entries.

    Raises:
        NotPure: If any state is mixed
    """
    kets = pure_kets(ensemble)
    overlaps = np.abs(kets.conj() @ kets.T)
    amp = np.sqrt(ensemble.priors)
    normalized = np.clip(overlaps, 0.0, 1.0)
    np.fill_diagonal(normalized, 1.0)
    return FidelityMatrix(unnormalized=np.outer(amp, amp) * overlaps, normalized=normalized)


def check_index_set(ensemble: Ensemble, indices: Iterable[int]) -> List[int]:
    """
    Validate a support index set against an ensemble

    Returns:
        Sorted list of unique indices

    Raises:
        InvalidSupport: If the set is empty or has out-of-range entries
    """
    idx = sorted({int(i) for i in indices})
    if not idx:
        raise InvalidSupport("Index set must be nonempty")
    if idx[0] < 0 or idx[-1] >= ensemble.n:
        raise InvalidSupport(f"Index set {idx} out of range for N={ensemble.n}")
    return idx


def pruned_ensemble(ensemble: Ensemble, indices: Iterable[int]) -> Tuple[float, Ensemble]:
    """
    Restrict an ensemble to an index set and renormalize its priors

    Args:
        ensemble: Source ensemble
        indices: Nonempty index set I+

    Returns:
        (p_plus, pruned ensemble) with p_plus = sum of priors over I+

    Raises:
        InvalidSupport: If the set is invalid or carries zero total prior
    """
    idx = check_index_set(ensemble, indices)
    p_plus = float(ensemble.priors[idx].sum())
    if p_plus <= 0.0:
        raise InvalidSupport(f"Index set {idx} carries zero prior mass")
    priors = ensemble.priors[idx] / p_plus
    priors = priors / priors.sum()
    return p_plus, new_ensemble(priors, [ensemble.states[i] for i in idx])


def rotate_ensemble(ensemble: Ensemble, unitary) -> Ensemble:
    """Apply sigma_i -> U sigma_i U^dagger to every state"""
    u = as_complex_matrix(unitary)
    if u.shape[0] != ensemble.dim:
        raise InvalidEnsemble(f"Unitary of size {u.shape[0]} for dimension {ensemble.dim}")
    states = []
    for s in ensemble.states:
        if s.ket is not None:
            states.append(DensityMatrix.from_ket(u @ s.ket))
        else:
            states.append(DensityMatrix.from_matrix(u @ s.matrix @ u.conj().T))
    return new_ensemble(ensemble.priors, states)
