"""Dense real linear algebra: decompositions, matrix norms, numerical rank.

All operations accept anything `np.asarray` turns into a 2-D real matrix
and reject NaN/Inf on entry. Spectra are returned sorted descending.
"""

from typing import NamedTuple

import numpy as np

from .errors import DimensionError, ParameterError, SymmetryError

DEFAULT_RANK_TOL = 1e-8


def as_matrix(a, name="matrix") -> np.ndarray:
    """Validate and return `a` as a 2-D float64 array with finite entries."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {m.shape}")
    if m.size == 0:
        raise DimensionError(f"{name} must be nonempty, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ParameterError(f"{name} contains non-finite entries")
    return m


class EigSym(NamedTuple):
    """Eigendecomposition of a symmetric matrix, eigenvalues descending."""

    values: np.ndarray   # (n,)
    vectors: np.ndarray  # (n, n), orthonormal columns

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


class Svd(NamedTuple):
    """Thin singular value decomposition, singular values descending."""

    u: np.ndarray                # (m, k)
    singular_values: np.ndarray  # (k,), nonnegative
    v: np.ndarray                # (n, k)

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.singular_values) @ self.v.T


def eig_sym(s, symmetry_tol: float = 1e-8) -> EigSym:
    """Eigendecomposition of a (numerically) symmetric matrix.

    The input is symmetrized as (S + S^T)/2 before factorization, which is
    exact for symmetric input and absorbs the O(tol) asymmetry that
    alternating solvers accumulate. Asymmetry beyond
    ``symmetry_tol * ||s||_F`` is an error rather than silently averaged.
    """
    s = as_matrix(s, "s")
    n, m = s.shape
    if n != m:
        raise DimensionError(f"eig_sym needs a square matrix, got {s.shape}")
    skew = np.linalg.norm(s - s.T, "fro")
    if skew > symmetry_tol * max(np.linalg.norm(s, "fro"), 1e-300):
        raise SymmetryError(
            f"asymmetry {skew:.3e} exceeds tolerance {symmetry_tol:.1e} * ||s||_F"
        )
    values, vectors = np.linalg.eigh((s + s.T) / 2)
    order = np.argsort(values)[::-1]
    return EigSym(values=values[order], vectors=vectors[:, order])


def svd(a) -> Svd:
    """Thin SVD with k = min(m, n) and descending singular values."""
    a = as_matrix(a, "a")
    u, sigma, vt = np.linalg.svd(a, full_matrices=False)
    return Svd(u=u, singular_values=sigma, v=vt.T)


_NORM_KINDS = ("nuclear", "frobenius", "operator", "l1", "l21")


def norm(a, kind: str) -> float:
    """One of five matrix norms.

    nuclear   sum of singular values
    frobenius sqrt of sum of squared entries (= sqrt(trace(A^T A)))
    operator  largest singular value
    l1        sum of absolute entries
    l21       sum of column 2-norms
    """
    a = as_matrix(a, "a")
    if kind == "nuclear":
        return float(np.linalg.svd(a, compute_uv=False).sum())
    if kind == "frobenius":
        return float(np.linalg.norm(a, "fro"))
    if kind == "operator":
        return float(np.linalg.svd(a, compute_uv=False)[0])
    if kind == "l1":
        return float(np.abs(a).sum())
    if kind == "l21":
        return float(np.linalg.norm(a, axis=0).sum())
    raise ParameterError(f"unknown norm kind {kind!r}, expected one of {_NORM_KINDS}")


def numerical_rank(a, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above rel_tol * sigma_max; 0 for the zero matrix."""
    if not 0.0 < rel_tol < 1.0:
        raise ParameterError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    sigma = np.linalg.svd(as_matrix(a, "a"), compute_uv=False)
    return int((sigma > rel_tol * sigma[0]).sum())


def row_space_projector(x, rel_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthogonal projector V_r V_r^T onto the row space of x.

    V_r holds the first r right singular vectors, r the numerical rank.
    The result is symmetric, idempotent, and has trace r.
    """
    x = as_matrix(x, "x")
    if not 0.0 < rel_tol < 1.0:
        raise ParameterError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    _, sigma, vt = np.linalg.svd(x, full_matrices=False)
    r = int((sigma > rel_tol * sigma[0]).sum())
    vr = vt[:r].T
    p = vr @ vr.T
    return (p + p.T) / 2
