"""Minimum-error measurements: POVM type, certificate and fixed-point solver"""

from solver.optimizer import OptimalMeasurementSolver, SolveResult, solve_optimal
from solver.povm import (
    Certificate,
    Povm,
    certify,
    helstrom_operators,
    pgm,
    reflect_povm,
    success_probability,
    validate_povm,
)

__all__ = [
    "Certificate",
    "OptimalMeasurementSolver",
    "Povm",
    "SolveResult",
    "certify",
    "helstrom_operators",
    "pgm",
    "reflect_povm",
    "solve_optimal",
    "success_probability",
    "validate_povm",
]
