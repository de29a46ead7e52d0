"""Real Schur decomposition of real normal matrices by Jacobi-like sweeps."""

from .driver import (
    Config,
    SchurResult,
    Spectrum,
    decompose,
    extract_spectrum,
    perturbation_factors,
)
from .genmat import EnsembleSpec, fig1_matrix, generate, haar_orthogonal
from .matcore import (
    EPS,
    GivensRotation,
    MatrixFormatError,
    offdiag,
    offschur,
    read_matrix,
    write_matrix,
)

__all__ = [
    "Config",
    "SchurResult",
    "Spectrum",
    "decompose",
    "extract_spectrum",
    "perturbation_factors",
    "EnsembleSpec",
    "generate",
    "fig1_matrix",
    "haar_orthogonal",
    "EPS",
    "GivensRotation",
    "MatrixFormatError",
    "offschur",
    "offdiag",
    "read_matrix",
    "write_matrix",
]
