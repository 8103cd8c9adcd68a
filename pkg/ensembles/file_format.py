"""
Ensemble File Format for the Quantum State Discrimination Toolkit
Reads and writes the plain-text ensemble description used by the CLI

Layout (``#`` starts a comment, blank lines are ignored)::

    dim 2
    N 2
    state 0.5
    1.0,0.0 0.0,0.0
    0.0,0.0 0.0,0.0
    state 0.5
    0.0,0.0 0.0,0.0
    0.0,0.0 1.0,0.0
"""

import os
from typing import Iterator, List, Tuple

import numpy as np

from ensembles.ensemble import Ensemble, new_ensemble
from utils.exceptions import EnsembleFormatError, InvalidEnsemble, InvalidMatrix
from utils.logger import get_logger

logger = get_logger(__name__)

PRIOR_SUM_TOL = 1e-9


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _parse_int_field(entry: Tuple[int, List[str]], name: str) -> int:
    number, tokens = entry
    if len(tokens) != 2 or tokens[0] != name:
        raise EnsembleFormatError(f"expected '{name} <integer>'", number)
    try:
        value = int(tokens[1])
    except ValueError:
        raise EnsembleFormatError(f"'{tokens[1]}' is not an integer", number)
    if value < 1:
        raise EnsembleFormatError(f"{name} must be positive, got {value}", number)
    return value


def _parse_entry(token: str, number: int) -> complex:
    parts = token.split(",")
    if len(parts) not in (1, 2):
        raise EnsembleFormatError(f"entry '{token}' is not 're,im'", number)
    try:
        re_part = float(parts[0])
        im_part = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise EnsembleFormatError(f"entry '{token}' is not numeric", number)
    return complex(re_part, im_part)


def parse_ensemble_text(text: str) -> Ensemble:
    """
    Parse an ensemble description

    Args:
        text: File contents

    Returns:
        Validated Ensemble

    Raises:
        EnsembleFormatError: On any syntax or structure problem
        InvalidEnsemble: If the parsed priors or states are invalid
    """
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise EnsembleFormatError("missing 'dim' and 'N' header", lines[0][0] if lines else None)

    dim = _parse_int_field(lines[0], "dim")
    count = _parse_int_field(lines[1], "N")

    cursor = 2
    priors = []
    matrices = []
    for index in range(count):
        if cursor >= len(lines):
            raise EnsembleFormatError(f"expected {count} states, found {index}")
        number, tokens = lines[cursor]
        if len(tokens) != 2 or tokens[0] != "state":
            raise EnsembleFormatError("expected 'state <prior>'", number)
        try:
            priors.append(float(tokens[1]))
        except ValueError:
            raise EnsembleFormatError(f"prior '{tokens[1]}' is not numeric", number)
        cursor += 1

        matrix = np.zeros((dim, dim), dtype=complex)
        for row in range(dim):
            if cursor >= len(lines):
                raise EnsembleFormatError(f"state {index} is missing rows")
            number, tokens = lines[cursor]
            if len(tokens) != dim:
                raise EnsembleFormatError(f"expected {dim} entries, got {len(tokens)}", number)
            matrix[row] = [_parse_entry(t, number) for t in tokens]
            cursor += 1
        matrices.append(matrix)

    if cursor < len(lines):
        raise EnsembleFormatError("unexpected content after last state", lines[cursor][0])

    total = sum(priors)
    if abs(total - 1.0) > PRIOR_SUM_TOL:
        raise InvalidEnsemble(f"Priors sum to {total:.12f}, expected 1")
    priors = [p / total for p in priors]

    try:
        return new_ensemble(priors, matrices)
    except InvalidMatrix as e:
        raise InvalidEnsemble(str(e))


def read_ensemble(path: str) -> Ensemble:
    """
    Read an ensemble file

    Raises:
        EnsembleFormatError: If the file is missing or malformed
    """
    if not os.path.exists(path):
        raise EnsembleFormatError(f"ensemble file not found: {path}")
    with open(path, "r") as f:
        text = f.read()
    ensemble = parse_ensemble_text(text)
    logger.info(f"Loaded ensemble from {path}: N={ensemble.n}, d={ensemble.dim}")
    return ensemble


def format_ensemble(ensemble: Ensemble) -> str:
    """Render an ensemble in the file format, using repr() so floats survive a reload"""
    out = [
        "# quantum state discrimination ensemble",
        f"dim {ensemble.dim}",
        f"N {ensemble.n}",
    ]
    for prior, state in zip(ensemble.priors, ensemble.states):
        out.append(f"state {float(prior)!r}")
        for row in state.matrix:
            out.append(" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row))
    return "\n".join(out) + "\n"


def write_ensemble(ensemble: Ensemble, path: str) -> None:
    """Write an ensemble file, creating parent directories as needed"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(format_ensemble(ensemble))
    logger.debug(f"Wrote ensemble with N={ensemble.n} to {path}")
