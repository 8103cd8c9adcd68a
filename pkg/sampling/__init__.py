"""Seeded random problem instances"""

from sampling.random_instances import (
    get_generator,
    instance_generator,
    random_unitary,
    sample_dirichlet_uniform,
    sample_hs_density,
    sample_instance,
    sample_pure_instance,
    sample_pure_state,
    seeded_instance,
)

__all__ = [
    "get_generator",
    "instance_generator",
    "random_unitary",
    "sample_dirichlet_uniform",
    "sample_hs_density",
    "sample_instance",
    "sample_pure_instance",
    "sample_pure_state",
    "seeded_instance",
]
