"""Closed-form proximal operators used as sub-steps of the ALM solvers.

Each operator minimizes ``tau * penalty(M) + 0.5 * ||M - G||_F^2`` exactly:
nuclear norm (svt), nuclear norm over the PSD cone (psd_eig_threshold),
entrywise l1 (shrink_l1), and columnwise l2,1 (shrink_l21).
"""

import numpy as np

from .errors import DimensionError, ParameterError
from .linalg import as_matrix


def _check_tau(tau):
    if not tau > 0:
        raise ParameterError(f"tau must be positive, got {tau}")
    return float(tau)


def svt(g, tau) -> np.ndarray:
    """Singular value thresholding: soft-threshold the singular values by tau."""
    g = as_matrix(g, "g")
    tau = _check_tau(tau)
    u, sigma, vt = np.linalg.svd(g, full_matrices=False)
    kept = np.maximum(sigma - tau, 0.0)
    return (u * kept) @ vt


def psd_eig_threshold(g, tau) -> np.ndarray:
    """Eigenvalue thresholding onto the PSD cone.

    Symmetrizes g as (g + g^T)/2, then soft-thresholds its eigenvalues by
    tau and clamps them at zero. The result is the unique symmetric PSD
    minimizer of tau*||M||_* + 0.5*||M - g||_F^2; it costs one symmetric
    eigendecomposition instead of the SVD that svt needs.
    """
    g = as_matrix(g, "g")
    n, m = g.shape
    if n != m:
        raise DimensionError(f"psd_eig_threshold needs a square matrix, got {g.shape}")
    tau = _check_tau(tau)
    lam, q = np.linalg.eigh((g + g.T) / 2)
    kept = np.maximum(lam - tau, 0.0)
    out = (q * kept) @ q.T
    return (out + out.T) / 2


def shrink_l1(g, tau) -> np.ndarray:
    """Entrywise soft thresholding: sign(g) * max(|g| - tau, 0)."""
    g = as_matrix(g, "g")
    tau = _check_tau(tau)
    return np.sign(g) * np.maximum(np.abs(g) - tau, 0.0)


def shrink_l21(g, tau) -> np.ndarray:
    """Columnwise shrinkage: scale each column by max(1 - tau/||col||, 0)."""
    g = as_matrix(g, "g")
    tau = _check_tau(tau)
    norms = np.linalg.norm(g, axis=0)
    scale = np.zeros_like(norms)
    nz = norms > tau
    scale[nz] = 1.0 - tau / norms[nz]
    return g * scale
