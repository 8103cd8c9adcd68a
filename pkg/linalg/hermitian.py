"""
Hermitian Matrix Algebra for the Quantum State Discrimination Toolkit
Eigendecomposition, PSD tests, matrix functions, trace norm and the
closed-form square root of a 2x2 PSD matrix
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from utils.exceptions import DegenerateSqrt, InvalidMatrix, NotPsd
from utils.logger import get_logger

logger = get_logger(__name__)

HERMITIAN_ATOL = 1e-9
PSD_TOL = 1e-9
RANK_TOL = 1e-10


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending with matching orthonormal columns"""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_complex_matrix(a) -> np.ndarray:
    """
    Validate a square, finite matrix and return it as complex128

    Raises:
        InvalidMatrix: If the input is not square or has NaN/Inf entries
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidMatrix(f"Expected a nonempty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix("Matrix has non-finite entries")
    return m


def as_hermitian(a, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """
    Validate near-Hermiticity and return the exactly Hermitian part (A + A†)/2

    Args:
        a: Square array-like
        atol: Allowed ||A - A†||_F relative to max(1, ||A||_F)

    Returns:
        Hermitian complex128 array

    Raises:
        InvalidMatrix: If A is not square, not finite or not Hermitian
    """
    m = as_complex_matrix(a)
    scale = max(1.0, float(np.linalg.norm(m)))
    skew = float(np.linalg.norm(m - m.conj().T))
    if skew > atol * scale:
        raise InvalidMatrix(f"Matrix is not Hermitian (||A - A^H||_F = {skew:.3e})")
    return 0.5 * (m + m.conj().T)


def eig_hermitian(h) -> EigenSystem:
    """
    Eigendecomposition of a Hermitian matrix

    Args:
        h: Hermitian matrix

    Returns:
        EigenSystem with eigenvalues in descending order
    """
    m = as_hermitian(h)
    w, v = la.eigh(m)
    order = np.argsort(w)[::-1]
    return EigenSystem(eigenvalues=np.asarray(w[order], dtype=float), eigenvectors=v[:, order])


def spectral_norm(h) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix"""
    w = la.eigvalsh(as_hermitian(h))
    return float(np.max(np.abs(w)))


def is_psd(h, tol: float = PSD_TOL) -> bool:
    """
    Check positive semidefiniteness up to a relative tolerance

    Args:
        h: Hermitian matrix
        tol: Nonnegative tolerance, scaled by max(1, ||H||_2)

    Returns:
        True iff lambda_min >= -tol * max(1, ||H||_2)
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    w = la.eigvalsh(as_hermitian(h))
    scale = max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] >= -tol * scale)


def _psd_eigensystem(h, tol: float = PSD_TOL):
    m = as_hermitian(h)
    w, v = la.eigh(m)
    scale = max(1.0, float(np.max(np.abs(w))))
    if w[0] < -tol * scale:
        raise NotPsd(f"Matrix has eigenvalue {w[0]:.3e} below -{tol:g} (relative)")
    # rounding jitter on sampled states lands just below zero
    w = np.where(w < 0.0, 0.0, w)
    return w, v


def apply_psd_function(h, func, tol: float = PSD_TOL) -> np.ndarray:
    """Apply a scalar function to the clamped spectrum of a PSD matrix"""
    w, v = _psd_eigensystem(h, tol)
    return (v * func(w)) @ v.conj().T


def mat_sqrt_psd(h, tol: float = PSD_TOL) -> np.ndarray:
    """
    Principal square root of a PSD matrix

    Args:
        h: PSD Hermitian matrix
        tol: PSD tolerance; eigenvalues in [-tol, 0) are clamped to zero

    Returns:
        PSD square root

    Raises:
        NotPsd: If an eigenvalue is below -tol (relative)
    """
    root = apply_psd_function(h, np.sqrt, tol)
    return 0.5 * (root + root.conj().T)


def pinv_sqrt(h, rank_tol: float = RANK_TOL, tol: float = PSD_TOL) -> np.ndarray:
    """
    Moore-Penrose inverse square root of a PSD matrix

    Eigenvalues above rank_tol * lambda_max map to lambda^(-1/2), the rest to 0.

    Args:
        h: PSD Hermitian matrix
        rank_tol: Relative rank cutoff

    Returns:
        Hermitian matrix commuting with h
    """
    w, v = _psd_eigensystem(h, tol)
    w_max = float(w[-1]) if w.size else 0.0
    inv = np.zeros_like(w)
    if w_max > 0.0:
        keep = w > rank_tol * w_max
        inv[keep] = 1.0 / np.sqrt(w[keep])
    out = (v * inv) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def range_projector(h, rank_tol: float = RANK_TOL, tol: float = PSD_TOL) -> np.ndarray:
    """Orthogonal projector onto the numerical range of a PSD matrix"""
    w, v = _psd_eigensystem(h, tol)
    w_max = float(w[-1]) if w.size else 0.0
    if w_max <= 0.0:
        return np.zeros_like(v)
    cols = v[:, w > rank_tol * w_max]
    return cols @ cols.conj().T


def trace_norm(a) -> float:
    """
    Trace norm ||A||_1, the sum of singular values

    Args:
        a: Square matrix

    Returns:
        Nonnegative real
    """
    m = as_complex_matrix(a)
    return float(np.sum(la.svdvals(m)))


def sqrt_2x2_levinger(s) -> np.ndarray:
    """
    Closed-form square root of a 2x2 PSD matrix

    With tau = tr S and delta = det S, sqrt(S) = (S + sI) / t where
    s = sqrt(delta) and t = sqrt(tau + 2s).

    Args:
        s: 2x2 PSD Hermitian matrix

    Returns:
        PSD square root

    Raises:
        InvalidMatrix: If S is not 2x2
        NotPsd: If S is not PSD
        DegenerateSqrt: If tau + 2s vanishes on a nonzero matrix
    """
    m = as_hermitian(s)
    if m.shape != (2, 2):
        raise InvalidMatrix(f"Levinger square root needs a 2x2 matrix, got {m.shape}")
    if not is_psd(m, PSD_TOL):
        raise NotPsd("Levinger square root needs a PSD matrix")
    if not np.any(m):
        return np.zeros((2, 2), dtype=complex)

    tau = float(np.real(m[0, 0] + m[1, 1]))
    delta = float(np.real(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))
    root_delta = np.sqrt(max(delta, 0.0))
    t_sq = tau + 2.0 * root_delta
    if t_sq <= 0.0:
        raise DegenerateSqrt("tau + 2*sqrt(delta) = 0 for a nonzero matrix")
    return (m + root_delta * np.eye(2)) / np.sqrt(t_sq)
