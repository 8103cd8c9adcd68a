"""
Random Instance Generation for the Quantum State Discrimination Toolkit
Hilbert-Schmidt density matrices, flat Dirichlet priors, Haar states and
unitaries, with per-instance reproducible generators
"""

from typing import Union

import numpy as np
from numpy.random import Generator, SeedSequence, default_rng

from ensembles.ensemble import DensityMatrix, Ensemble, new_ensemble
from utils.exceptions import InvalidInput

SeedLike = Union[None, int, SeedSequence, Generator]


def get_generator(seed: SeedLike = None) -> Generator:
    """
    Obtain a generator from a seed, a SeedSequence or an existing Generator

    Args:
        seed: Anything numpy's default_rng accepts; Generators pass through

    Returns:
        numpy Generator
    """
    if isinstance(seed, Generator):
        return seed
    return default_rng(seed)


def instance_generator(seed: int, index: int) -> Generator:
    """
    Independent generator for instance `index` of a seeded experiment

    Instance i depends only on (seed, i), so results do not change with the
    number of workers or the order they run in.
    """
    return default_rng(SeedSequence([int(seed), int(index)]))


def _ginibre(shape, rng: Generator) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_hs_density(d: int, rng: SeedLike = None) -> DensityMatrix:
    """
    Density matrix drawn from the Hilbert-Schmidt measure

    Args:
        d: Dimension, at least 2
        rng: Seed or Generator

    Returns:
        rho = G G^dagger / tr(G G^dagger) for a complex Gaussian G
    """
    if d < 2:
        raise InvalidInput(f"Hilbert-Schmidt sampling needs d >= 2, got {d}")
    g = _ginibre((d, d), get_generator(rng))
    rho = g @ g.conj().T
    rho = rho / np.real(np.trace(rho))
    return DensityMatrix.from_matrix(0.5 * (rho + rho.conj().T))


def sample_pure_state(d: int, rng: SeedLike = None) -> DensityMatrix:
    """Haar-random pure state from a normalized complex Gaussian vector"""
    if d < 1:
        raise InvalidInput(f"Dimension must be positive, got {d}")
    return DensityMatrix.from_ket(_ginibre(d, get_generator(rng)))


def random_unitary(d: int, rng: SeedLike = None) -> np.ndarray:
    """
    Haar-random unitary

    QR of a Ginibre matrix with the phases of R's diagonal moved into Q.
    """
    q, r = np.linalg.qr(_ginibre((d, d), get_generator(rng)))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def sample_dirichlet_uniform(n: int, rng: SeedLike = None) -> np.ndarray:
    """
    Priors drawn uniformly from the probability simplex, Dir(1, ..., 1)

    Normalized iid standard exponentials.

    Args:
        n: Number of priors
        rng: Seed or Generator

    Returns:
        Nonnegative array of length n summing to 1
    """
    if n < 1:
        raise InvalidInput(f"Need at least one prior, got {n}")
    if n == 1:
        return np.array([1.0])
    draws = get_generator(rng).standard_exponential(n)
    return draws / draws.sum()


def sample_instance(n: int, d: int, rng: SeedLike = None) -> Ensemble:
    """
    Random ensemble: flat Dirichlet priors and iid Hilbert-Schmidt states

    Args:
        n: Number of states
        d: Dimension
        rng: Seed or Generator

    Returns:
        Ensemble
    """
    gen = get_generator(rng)
    priors = sample_dirichlet_uniform(n, gen)
    states = [sample_hs_density(d, gen) for _ in range(n)]
    return new_ensemble(priors, states)


def sample_pure_instance(
    n: int, d: int, rng: SeedLike = None, equiprobable: bool = False
) -> Ensemble:
    """
    Random pure ensemble with Haar states

    Args:
        n: Number of states
        d: Dimension
        rng: Seed or Generator
        equiprobable: Use priors 1/n instead of Dirichlet draws

    Returns:
        Ensemble
    """
    gen = get_generator(rng)
    priors = np.full(n, 1.0 / n) if equiprobable else sample_dirichlet_uniform(n, gen)
    states = [sample_pure_state(d, gen) for _ in range(n)]
    return new_ensemble(priors, states)


def seeded_instance(
    seed: int, index: int, n: int, d: int, pure: bool = False, equiprobable: bool = False
) -> Ensemble:
    """Instance `index` of a seeded stream, see instance_generator()"""
    rng = instance_generator(seed, index)
    if pure:
        return sample_pure_instance(n, d, rng, equiprobable=equiprobable)
    if equiprobable:
        states = [sample_hs_density(d, rng) for _ in range(n)]
        return new_ensemble(np.full(n, 1.0 / n), states)
    return sample_instance(n, d, rng)
