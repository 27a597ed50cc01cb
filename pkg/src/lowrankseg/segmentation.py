"""From learned representations to cluster labels, and scoring against truth."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import KMeans

from .errors import DimensionError, ParameterError
from .linalg import as_matrix

AFFINITY_MODES = ("abs_sym", "psd_direct")


@dataclass(frozen=True)
class ClusteringResult:
    labels: np.ndarray
    k: int
    accuracy: Optional[float]  # only set when ground truth was supplied
    seed: int


def affinity_from_representation(z, mode: str = "abs_sym") -> np.ndarray:
    """Symmetric nonnegative affinity from a coefficient matrix.

    abs_sym     W = (|Z| + |Z^T|) / 2, the usual post-hoc symmetrization
    psd_direct  W = |(Z + Z^T) / 2|, for representations that are already
                (near-)symmetric PSD and need no repair
    """
    z = as_matrix(z, "z")
    if z.shape[0] != z.shape[1]:
        raise DimensionError(f"affinity needs a square matrix, got {z.shape}")
    if mode == "abs_sym":
        w = (np.abs(z) + np.abs(z.T)) / 2
    elif mode == "psd_direct":
        w = np.abs((z + z.T) / 2)
    else:
        raise ParameterError(f"unknown affinity mode {mode!r}, expected {AFFINITY_MODES}")
    return (w + w.T) / 2


def gaussian_affinity(x, sigma: float) -> np.ndarray:
    """Gaussian kernel exp(-||x_i - x_j||^2 / sigma^2) between columns of x."""
    x = as_matrix(x, "x")
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    sq = (x * x).sum(axis=0)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (x.T @ x), 0.0)
    w = np.exp(-d2 / sigma**2)
    return (w + w.T) / 2


def linear_affinity(x) -> np.ndarray:
    """Linear kernel x_i^T x_j with negative entries clamped at zero."""
    x = as_matrix(x, "x")
    w = np.maximum(x.T @ x, 0.0)
    return (w + w.T) / 2


def spectral_cluster(w, k: int, seed: int) -> ClusteringResult:
    """Normalized spectral clustering of a symmetric nonnegative affinity.

    Builds L = I - D^{-1/2} W D^{-1/2} (rows with zero degree reduce to
    identity rows), embeds each point into the k eigenvectors of the k
    smallest eigenvalues, normalizes nonzero rows to unit length, and runs
    k-means++ with 20 restarts. Deterministic for a fixed (w, k, seed).
    """
    w = as_matrix(w, "w")
    n, m = w.shape
    if n != m:
        raise DimensionError(f"affinity must be square, got {w.shape}")
    if not k >= 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if k > n:
        raise ParameterError(f"k={k} exceeds number of points n={n}")
    if np.abs(w - w.T).max() > 1e-10 * max(np.abs(w).max(), 1.0):
        raise ParameterError("affinity must be symmetric")
    if w.min() < 0:
        raise ParameterError("affinity must be nonnegative")
    w = (w + w.T) / 2

    deg = w.sum(axis=1)
    inv_sqrt = np.where(deg > 0, 1.0 / np.sqrt(np.where(deg > 0, deg, 1.0)), 0.0)
    lap = np.eye(n) - inv_sqrt[:, None] * w * inv_sqrt[None, :]
    eigvals, eigvecs = np.linalg.eigh((lap + lap.T) / 2)
    embedding = eigvecs[:, :k]
    row_norms = np.linalg.norm(embedding, axis=1)
    nz = row_norms > 0
    embedding = embedding.copy()
    embedding[nz] /= row_norms[nz, None]

    km = KMeans(n_clusters=k, init="k-means++", n_init=20, random_state=seed)
    labels = km.fit_predict(embedding)
    return ClusteringResult(labels=labels.astype(int), k=k, accuracy=None, seed=int(seed))


def segmentation_accuracy(pred, truth) -> float:
    """Best label-bijection match fraction, via optimal assignment.

    Builds the contingency table between predicted and true labels and
    maximizes the matched count over all one-to-one label mappings.
    Invariant under relabeling of either side.
    """
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.shape != truth.shape:
        raise ParameterError(
            f"label vectors differ in length: {pred.shape[0]} vs {truth.shape[0]}"
        )
    if pred.size == 0:
        raise ParameterError("label vectors are empty")
    _, pi = np.unique(pred, return_inverse=True)
    _, ti = np.unique(truth, return_inverse=True)
    size = max(pi.max(), ti.max()) + 1
    table = np.zeros((size, size), dtype=np.int64)
    np.add.at(table, (pi, ti), 1)
    rows, cols = linear_sum_assignment(-table)
    return float(table[rows, cols].sum()) / pred.size


def block_diagonal_mass(z, group_sizes) -> float:
    """Fraction of sum|z_ij| that lies in the diagonal blocks of consecutive groups."""
    z = as_matrix(z, "z")
    sizes = [int(s) for s in group_sizes]
    if any(s <= 0 for s in sizes):
        raise ParameterError(f"group sizes must be positive, got {sizes}")
    n = z.shape[0]
    if z.shape[0] != z.shape[1] or sum(sizes) != n:
        raise ParameterError(
            f"group sizes {sizes} do not partition a {z.shape} matrix"
        )
    total = np.abs(z).sum()
    if total == 0:
        return 1.0
    inside = 0.0
    start = 0
    for s in sizes:
        inside += np.abs(z[start : start + s, start : start + s]).sum()
        start += s
    return float(inside / total)
