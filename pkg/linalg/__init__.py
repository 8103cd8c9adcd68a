"""Dense Hermitian linear algebra used throughout the toolkit"""

from linalg.hermitian import (
    EigenSystem,
    as_complex_matrix,
    as_hermitian,
    eig_hermitian,
    is_psd,
    mat_sqrt_psd,
    pinv_sqrt,
    range_projector,
    spectral_norm,
    sqrt_2x2_levinger,
    trace_norm,
)

__all__ = [
    "EigenSystem",
    "as_complex_matrix",
    "as_hermitian",
    "eig_hermitian",
    "is_psd",
    "mat_sqrt_psd",
    "pinv_sqrt",
    "range_projector",
    "spectral_norm",
    "sqrt_2x2_levinger",
    "trace_norm",
]
