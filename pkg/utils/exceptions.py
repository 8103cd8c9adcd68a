"""
Exception Hierarchy for the Quantum State Discrimination Toolkit
Every error raised by the library derives from QsdError
"""

from typing import Any, Optional


class QsdError(Exception):
    """Base class for all toolkit errors"""


class InvalidMatrix(QsdError, ValueError):
    """Matrix is not square, not Hermitian, or holds NaN/Inf entries"""


class NotPsd(QsdError, ValueError):
    """Matrix has an eigenvalue below the PSD tolerance"""


class DegenerateSqrt(QsdError, ValueError):
    """Closed-form 2x2 square root hit tau + 2s = 0 on a nonzero matrix"""


class InvalidEnsemble(QsdError, ValueError):
    """Priors or states do not form a valid ensemble"""


class NotPure(QsdError, ValueError):
    """Operation requires rank-1 states"""


class InvalidFidelity(QsdError, ValueError):
    """Normalized fidelity outside [0, 1]"""


class NotRealizableInQubit(QsdError, ValueError):
    """Fidelity matrix has no three-dimensional Bloch realization"""


class InvalidAlpha(QsdError, ValueError):
    """Equidistant overlap outside [1/2, 1]"""


class InvalidParameters(QsdError, ValueError):
    """Family parameters outside their admissible range"""


class WrongDimension(QsdError, ValueError):
    """Operation is defined only for a specific Hilbert-space dimension"""


class InvalidInput(QsdError, ValueError):
    """Arguments are inconsistent with each other"""


class InvalidSupport(QsdError, ValueError):
    """Index set is empty or out of range"""


class NotApplicable(QsdError, ValueError):
    """Bound variant does not apply to this ensemble"""


class InvalidWeights(QsdError, ValueError):
    """Superset weights are negative, misshaped or do not sum to one"""


class EnsembleFormatError(QsdError, ValueError):
    """Ensemble file could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotConverged(QsdError):
    """
    Solver exhausted its iteration budget before reaching the requested gap

    The partial result, including its certified gap, is kept on the exception
    so callers can still use it.
    """

    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result
