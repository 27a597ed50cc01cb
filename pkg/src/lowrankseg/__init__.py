"""Low-rank affinity learning for subspace segmentation.

Learns low-rank (optionally positive semidefinite) self-representation
matrices via closed forms or inexact augmented-Lagrange iteration, turns
them into affinities, and clusters with normalized spectral clustering.
"""

__version__ = "0.1.0"

from .data import CorruptionSpec, Dataset, corrupt, generate_toy, load_matrix, save_matrix
from .errors import (
    DimensionError,
    DivergenceError,
    LowRankSegError,
    ParameterError,
    ParseError,
    SymmetryError,
)
from .linalg import EigSym, Svd, eig_sym, norm, numerical_rank, row_space_projector, svd
from .prox import psd_eig_threshold, shrink_l1, shrink_l21, svt
from .segmentation import (
    ClusteringResult,
    affinity_from_representation,
    block_diagonal_mass,
    gaussian_affinity,
    linear_affinity,
    segmentation_accuracy,
    spectral_cluster,
)
from .solver import (
    AlmConfig,
    SolveResult,
    SpectrumReport,
    gram_factor,
    lrr_closed_form,
    solve,
    spectrum_report,
    update_coefficient,
)

__all__ = [
    "__version__",
    "AlmConfig",
    "ClusteringResult",
    "CorruptionSpec",
    "Dataset",
    "DimensionError",
    "DivergenceError",
    "EigSym",
    "LowRankSegError",
    "ParameterError",
    "ParseError",
    "SolveResult",
    "SpectrumReport",
    "Svd",
    "SymmetryError",
    "affinity_from_representation",
    "block_diagonal_mass",
    "corrupt",
    "eig_sym",
    "gaussian_affinity",
    "generate_toy",
    "gram_factor",
    "linear_affinity",
    "load_matrix",
    "lrr_closed_form",
    "norm",
    "numerical_rank",
    "psd_eig_threshold",
    "row_space_projector",
    "save_matrix",
    "segmentation_accuracy",
    "shrink_l1",
    "shrink_l21",
    "solve",
    "spectral_cluster",
    "spectrum_report",
    "svd",
    "svt",
    "update_coefficient",
]
