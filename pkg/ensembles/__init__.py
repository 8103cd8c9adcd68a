"""Problem instances: ensembles, Bloch vectors, named families and file I/O"""

from ensembles.bloch import (
    bloch_from_state,
    bloch_inner_from_fidelity,
    ensemble_from_gram,
    gell_mann_basis,
    qubit_ensemble_from_fidelity,
    reflect_ensemble,
    reflect_qubit,
    state_from_bloch,
)
from ensembles.constructors import (
    equidistant_triple,
    identical_states,
    mirror_symmetric,
    orthogonal_pair,
)
from ensembles.ensemble import (
    DensityMatrix,
    Ensemble,
    FidelityMatrix,
    fidelity_matrix,
    gram,
    new_ensemble,
    pruned_ensemble,
    rotate_ensemble,
)
from ensembles.file_format import parse_ensemble_text, read_ensemble, write_ensemble

__all__ = [
    "DensityMatrix",
    "Ensemble",
    "FidelityMatrix",
    "bloch_from_state",
    "bloch_inner_from_fidelity",
    "ensemble_from_gram",
    "equidistant_triple",
    "fidelity_matrix",
    "gell_mann_basis",
    "gram",
    "identical_states",
    "mirror_symmetric",
    "new_ensemble",
    "orthogonal_pair",
    "parse_ensemble_text",
    "pruned_ensemble",
    "qubit_ensemble_from_fidelity",
    "read_ensemble",
    "reflect_ensemble",
    "reflect_qubit",
    "rotate_ensemble",
    "state_from_bloch",
    "write_ensemble",
]
