"""
Generalized Bloch Vectors for the Quantum State Discrimination Toolkit
Gell-Mann operator basis, state <-> Bloch conversion, qubit reflection and
reconstruction of ensembles from Gram and fidelity matrices
"""

import math
from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.linalg as la

from ensembles.ensemble import (
    DensityMatrix,
    Ensemble,
    FidelityMatrix,
    canonical_phase,
    new_ensemble,
)
from linalg.hermitian import as_hermitian, eig_hermitian, is_psd
from utils.exceptions import (
    InvalidFidelity,
    InvalidMatrix,
    NotPsd,
    NotRealizableInQubit,
    WrongDimension,
)
from utils.logger import get_logger

logger = get_logger(__name__)

FIDELITY_CLIP = 1e-12
BLOCH_NORM_TOL = 1e-9
REALIZABLE_TOL = 1e-8

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


@lru_cache(maxsize=16)
def _gell_mann_cached(d: int) -> Tuple[np.ndarray, ...]:
    basis = []
    # symmetric off-diagonal
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            basis.append(m)
    # antisymmetric off-diagonal; sign chosen so d=2 gives Pauli Y
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            basis.append(m)
    # diagonal
    for j in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(j), np.arange(j)] = 1.0
        m[j, j] = -float(j)
        basis.append(math.sqrt(2.0 / (j * (j + 1))) * m)
    for m in basis:
        m.flags.writeable = False
    return tuple(basis)


def gell_mann_basis(d: int) -> np.ndarray:
    """
    Generalized Gell-Mann matrices, shape (d^2 - 1, d, d)

    Order is all symmetric (j<k lexicographic), then all antisymmetric, then
    the d-1 diagonal ones. Each satisfies tr(L_a L_b) = 2 delta_ab.
    """
    if d < 2:
        raise WrongDimension(f"Bloch basis needs d >= 2, got {d}")
    return np.stack(_gell_mann_cached(d))


def _bloch_scale(d: int) -> float:
    # rho = (I + c * r.L) / d with c = sqrt(d(d-1)/2) keeps pure states at |r| = 1
    return math.sqrt(d * (d - 1) / 2.0)


def bloch_from_state(rho) -> np.ndarray:
    """
    Bloch vector of a density matrix

    For d = 2 this is (tr rho X, tr rho Y, tr rho Z).

    Args:
        rho: DensityMatrix or array-like

    Returns:
        Real vector of length d^2 - 1
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_hermitian(rho)
    d = m.shape[0]
    basis = gell_mann_basis(d)
    expectations = np.real(np.einsum("aij,ji->a", basis, m))
    return expectations * d / (2.0 * _bloch_scale(d))


def state_from_bloch(r, d: int) -> DensityMatrix:
    """
    Density matrix with a given Bloch vector

    Args:
        r: Real vector of length d^2 - 1
        d: Hilbert-space dimension

    Returns:
        DensityMatrix

    Raises:
        NotPsd: If the vector lies outside the state space
    """
    vec = np.asarray(r, dtype=float).reshape(-1)
    basis = gell_mann_basis(d)
    if vec.size != basis.shape[0]:
        raise InvalidMatrix(f"Bloch vector for d={d} needs {basis.shape[0]} entries, got {vec.size}")
    if d == 2 and np.linalg.norm(vec) > 1.0 + BLOCH_NORM_TOL:
        raise NotPsd(f"Qubit Bloch vector has norm {np.linalg.norm(vec):.12f} > 1")
    m = (np.eye(d) + _bloch_scale(d) * np.einsum("a,aij->ij", vec, basis)) / d
    if not is_psd(m, BLOCH_NORM_TOL):
        raise NotPsd("Bloch vector does not describe a positive semidefinite state")
    return DensityMatrix.from_matrix(m)


def bloch_inner_from_fidelity(fhat: float, d: int) -> float:
    """
    Inner product of two pure-state Bloch vectors from their normalized fidelity

    Args:
        fhat: |<psi|phi>| in [0, 1]
        d: Hilbert-space dimension

    Returns:
        (d * fhat^2 - 1) / (d - 1), in [-1/(d-1), 1]

    Raises:
        InvalidFidelity: If fhat lies outside [0, 1]
    """
    if d < 2:
        raise WrongDimension(f"Bloch inner product needs d >= 2, got {d}")
    if not (-FIDELITY_CLIP <= fhat <= 1.0 + FIDELITY_CLIP):
        raise InvalidFidelity(f"Normalized fidelity {fhat} outside [0, 1]")
    f = min(max(fhat, 0.0), 1.0)
    return (d * f * f - 1.0) / (d - 1.0)


def reflect_qubit(rho) -> DensityMatrix:
    """
    Reflect a qubit state through the xy-plane, rho -> X rho^T X

    Raises:
        WrongDimension: If the state is not a qubit
    """
    state = rho if isinstance(rho, DensityMatrix) else DensityMatrix.from_matrix(rho)
    if state.dim != 2:
        raise WrongDimension(f"Reflection is defined for qubits, got d={state.dim}")
    if state.ket is not None:
        return DensityMatrix.from_ket(PAULI_X @ state.ket.conj())
    return DensityMatrix.from_matrix(PAULI_X @ state.matrix.T @ PAULI_X)


def reflect_ensemble(ensemble: Ensemble) -> Ensemble:
    """Apply reflect_qubit to every state of a qubit ensemble"""
    return new_ensemble(ensemble.priors, [reflect_qubit(s) for s in ensemble.states])


def ensemble_from_gram(g) -> Ensemble:
    """
    Pure ensemble realizing a Gram matrix

    Factorizes G = B^dagger B with B = sqrt(Lambda) V^dagger restricted to the
    numerical range, so the states live in dimension rank(G).

    Args:
        g: PSD Hermitian N x N matrix with unit trace

    Returns:
        Ensemble whose gram() equals G

    Raises:
        NotPsd: If G is not PSD
    """
    gm = as_hermitian(g)
    if not is_psd(gm, REALIZABLE_TOL):
        raise NotPsd("Gram matrix is not positive semidefinite")
    eig = eig_hermitian(gm)
    w_max = max(float(eig.eigenvalues[0]), 0.0)
    keep = eig.eigenvalues > 1e-10 * max(w_max, 1e-300)
    rank = max(int(np.count_nonzero(keep)), 1)
    lam = np.clip(eig.eigenvalues[:rank], 0.0, None)
    vecs = eig.eigenvectors[:, :rank]
    factor = np.sqrt(lam)[:, None] * vecs.conj().T  # rank x N, columns are the weighted kets

    priors = np.clip(np.real(np.diag(gm)), 0.0, None)
    states = []
    for j in range(gm.shape[0]):
        column = factor[:, j]
        if np.linalg.norm(column) <= 1e-12:
            column = np.zeros(rank, dtype=complex)
            column[0] = 1.0
        states.append(DensityMatrix.from_ket(column))
    logger.debug(f"Realized {gm.shape[0]}x{gm.shape[0]} Gram matrix in dimension {rank}")
    return new_ensemble(priors, states)


def _ket_from_qubit_bloch(r: np.ndarray) -> np.ndarray:
    x, y, z = r / np.linalg.norm(r)
    polar = math.acos(min(max(z, -1.0), 1.0))
    azimuth = math.atan2(y, x)
    ket = np.array([math.cos(polar / 2.0), np.exp(1j * azimuth) * math.sin(polar / 2.0)])
    return canonical_phase(ket)


def qubit_ensemble_from_fidelity(f) -> Ensemble:
    """
    Qubit ensemble with a prescribed fidelity matrix

    The normalized fidelities fix the pairwise Bloch inner products
    M_ij = 2 F^_ij^2 - 1; a rank <= 3 factorization of M gives the Bloch
    vectors up to an orthogonal transformation, and the priors are F_ii.

    Args:
        f: FidelityMatrix or unnormalized N x N array

    Returns:
        Pure qubit Ensemble

    Raises:
        InvalidFidelity: If an entry lies outside its range
        NotRealizableInQubit: If M is not PSD or has rank above 3
    """
    fm = f if isinstance(f, FidelityMatrix) else FidelityMatrix.from_unnormalized(f)
    priors = np.asarray(np.diag(fm.unnormalized), dtype=float)
    if np.any(priors <= 0.0):
        raise InvalidFidelity("Fidelity matrix needs a positive diagonal")
    n = priors.size

    inner = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            inner[i, j] = bloch_inner_from_fidelity(float(fm.normalized[i, j]), 2)

    w, v = la.eigh(0.5 * (inner + inner.T))
    w, v = w[::-1], v[:, ::-1]
    scale = max(1.0, float(np.max(np.abs(w))))
    if w[-1] < -REALIZABLE_TOL * scale:
        raise NotRealizableInQubit(f"Bloch inner-product matrix has eigenvalue {w[-1]:.3e}")
    if n > 3 and w[3] > REALIZABLE_TOL * scale:
        raise NotRealizableInQubit(
            f"Bloch inner-product matrix has rank > 3 (4th eigenvalue {w[3]:.3e})"
        )

    k = min(3, n)
    lam = np.clip(w[:k], 0.0, None)
    coords = v[:, :k] * np.sqrt(lam)
    vectors = np.zeros((n, 3))
    vectors[:, :k] = coords

    states = [DensityMatrix.from_ket(_ket_from_qubit_bloch(v)) for v in vectors]
    return new_ensemble(priors, states)
