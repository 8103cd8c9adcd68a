"""
Named Ensemble Families for the Quantum State Discrimination Toolkit
Equidistant triple, mirror-symmetric states and small reference ensembles
"""

import math
from typing import Iterable, Optional

import numpy as np

from ensembles.ensemble import DensityMatrix, Ensemble, new_ensemble
from utils.exceptions import InvalidAlpha, InvalidParameters

RANGE_TOL = 1e-12


def _check_range(name: str, value: float, low: float, high: float, error):
    if not (low - RANGE_TOL <= value <= high + RANGE_TOL):
        raise error(f"{name}={value} outside [{low}, {high}]")
    return min(max(value, low), high)


def equidistant_phase(alpha: float) -> float:
    """
    Relative phase making |<psi_2|psi_3>| = alpha in the equidistant triple

    cos(phase) = 1 - 1/(2 alpha^2), which is the factored form of
    (2a^4 - 3a^2 + 1) / (2a^2 (a^2 - 1)) and stays finite at alpha = 1.
    """
    alpha = _check_range("alpha", alpha, 0.5, 1.0, InvalidAlpha)
    return math.acos(min(max(1.0 - 1.0 / (2.0 * alpha * alpha), -1.0), 1.0))


def equidistant_triple(alpha: float) -> Ensemble:
    """
    Equiprobable qubit triple with every pairwise fidelity equal to alpha

    Args:
        alpha: Common overlap in [1/2, 1]

    Returns:
        Ensemble with |0>, a|0> + b|1>, a|0> + e^{i phase} b|1>

    Raises:
        InvalidAlpha: If alpha lies outside [1/2, 1]
    """
    alpha = _check_range("alpha", alpha, 0.5, 1.0, InvalidAlpha)
    phase = equidistant_phase(alpha)
    beta = math.sqrt(max(1.0 - alpha * alpha, 0.0))
    kets = [
        np.array([1.0, 0.0], dtype=complex),
        np.array([alpha, beta], dtype=complex),
        np.array([alpha, np.exp(1j * phase) * beta], dtype=complex),
    ]
    return new_ensemble([1.0 / 3.0] * 3, [DensityMatrix.from_ket(k) for k in kets])


def mirror_symmetric(p: float, theta: float) -> Ensemble:
    """
    Mirror-symmetric qubit triple

    States cos(t)|0> + sin(t)|1>, cos(t)|0> - sin(t)|1> and |0> with priors
    (p, p, 1 - 2p).

    Args:
        p: Prior of each mirrored state, in [0, 1/2]
        theta: Half-angle between the mirrored states, in [0, pi/2]

    Raises:
        InvalidParameters: If p or theta is out of range
    """
    p = _check_range("p", p, 0.0, 0.5, InvalidParameters)
    theta = _check_range("theta", theta, 0.0, math.pi / 2.0, InvalidParameters)
    c, s = math.cos(theta), math.sin(theta)
    kets = [
        np.array([c, s], dtype=complex),
        np.array([c, -s], dtype=complex),
        np.array([1.0, 0.0], dtype=complex),
    ]
    third = max(1.0 - 2.0 * p, 0.0)
    return new_ensemble([p, p, third], [DensityMatrix.from_ket(k) for k in kets])


def orthogonal_pair() -> Ensemble:
    """|0> and |1> with equal priors"""
    return new_ensemble(
        [0.5, 0.5],
        [DensityMatrix.from_ket([1.0, 0.0]), DensityMatrix.from_ket([0.0, 1.0])],
    )


def identical_states(priors: Iterable[float], state: Optional[object] = None) -> Ensemble:
    """
    N copies of one state with the given priors

    Args:
        priors: Priors summing to 1
        state: DensityMatrix, matrix or ket; defaults to |0><0|
    """
    prior_list = list(priors)
    if state is None:
        dm = DensityMatrix.from_ket([1.0, 0.0])
    elif isinstance(state, DensityMatrix):
        dm = state
    else:
        arr = np.asarray(state, dtype=complex)
        dm = DensityMatrix.from_ket(arr) if arr.ndim == 1 else DensityMatrix.from_matrix(arr)
    return new_ensemble(prior_list, [dm] * len(prior_list))
