"""Low-rank representation solvers.

Three routes to a coefficient matrix Z for data X (columns are samples):

* ``lrr_closed_form`` -- the exact minimizer of ||Z||_* s.t. X = XZ, which
  is the projector onto the row space of X (hence symmetric PSD, with
  spectrum {1 x rank(X), 0 x rest}).
* ``solve`` with ``psd=False`` -- inexact ALM for the robust problem
  min ||Z||_* + lambda*||E|| s.t. X = XZ + E.
* ``solve`` with ``psd=True`` -- same, with Z constrained to the PSD cone;
  the nuclear-norm step becomes an eigenvalue threshold instead of an SVD.
"""

import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

from . import prox
from .errors import DimensionError, DivergenceError, ParameterError
from .linalg import as_matrix, eig_sym, row_space_projector

NOISE_NORMS = ("l1", "l21")


@dataclass(frozen=True)
class AlmConfig:
    """Hyperparameters of the alternating solver.

    lam         trade-off between nuclear norm and the noise penalty
    noise_norm  "l1" (entrywise random corruption) or "l21" (column outliers)
    mu0, rho, mu_max  increasing penalty schedule mu <- min(rho*mu, mu_max)
    tol         max-abs feasibility tolerance on both constraints
    max_iter    iteration cap; hitting it yields converged=False, not an error
    psd         constrain Z to the positive semidefinite cone
    """

    lam: float
    noise_norm: str = "l21"
    mu0: float = 1e-6
    rho: float = 1.1
    mu_max: float = 1e10
    tol: float = 1e-6
    max_iter: int = 1000
    psd: bool = False

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"lam must be positive, got {self.lam}")
        if self.noise_norm not in NOISE_NORMS:
            raise ParameterError(f"noise_norm must be one of {NOISE_NORMS}")
        if not 0 < self.mu0 < self.mu_max:
            raise ParameterError("need 0 < mu0 < mu_max")
        if not self.rho > 1:
            raise ParameterError(f"rho must exceed 1, got {self.rho}")
        if not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be >= 1, got {self.max_iter}")


class IterationStat(NamedTuple):
    iteration: int
    primal_residual: float  # max-abs of X - XZ - E
    gap: float              # max-abs of Z - J
    objective: float        # ||J||_* + lam * ||E||_noise


@dataclass(frozen=True)
class SolveResult:
    """Solver output: coefficients, noise estimate, and per-iteration trace."""

    z: np.ndarray
    e: np.ndarray
    iterations: int
    converged: bool
    history: list
    timing: dict


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted spectra of a learned representation."""

    eigenvalues: np.ndarray      # of (z + z^T)/2, descending
    singular_values: np.ndarray  # of z, descending
    count_above: dict            # threshold -> #eigenvalues above it


def lrr_closed_form(x) -> np.ndarray:
    """Unique minimizer of ||Z||_* subject to X = XZ.

    Equals the row-space projector V V^T of X, so X @ Z == X, the spectrum
    is rank(X) ones and zeros elsewhere, and the nuclear norm is rank(X).
    The same matrix also solves the PSD-constrained variant.
    """
    return row_space_projector(x)


def gram_factor(x):
    """Cholesky factorization of (X^T X + I), reusable across solver iterations."""
    x = as_matrix(x, "x")
    n = x.shape[1]
    return scipy.linalg.cho_factor(x.T @ x + np.eye(n))


def update_coefficient(x, e, j, y1, y2, mu, cached_gram_factor) -> np.ndarray:
    """Exact minimizer of the Z block of the augmented Lagrangian.

    Solves (X^T X + I) Z = X^T (X - E) + J + (X^T Y1 - Y2) / mu using the
    cached factorization.
    """
    if not mu > 0:
        raise ParameterError(f"mu must be positive, got {mu}")
    rhs = x.T @ (x - e) + j + (x.T @ y1 - y2) / mu
    return scipy.linalg.cho_solve(cached_gram_factor, rhs)


def _noise_value(e, noise_norm):
    if noise_norm == "l1":
        return float(np.abs(e).sum())
    return float(np.linalg.norm(e, axis=0).sum())


def _check_finite(m, step, iteration):
    if not np.isfinite(m).all():
        raise DivergenceError(
            f"{step} produced non-finite values at iteration {iteration}"
        )


def solve(x, cfg: AlmConfig) -> SolveResult:
    """Inexact ALM for robust LRR (psd=False) or robust LRR-PSD (psd=True).

    Splits Z = J and alternates once per iteration:
      J-step  nuclear-norm prox of Z + Y2/mu at threshold 1/mu
              (eigenvalue threshold onto the PSD cone when cfg.psd)
      E-step  l1 or l2,1 shrinkage of X - XZ + Y1/mu at threshold lam/mu
      Z-step  exact linear solve against the cached Gram factorization
      multipliers  Y1 += mu*(X - XZ - E), Y2 += mu*(Z - J), mu grows by rho

    Stops when both max-abs residuals fall below cfg.tol. For the PSD
    variant the returned z is the final J, which is symmetric PSD by
    construction; otherwise it is the raw Z iterate, unsymmetrized.
    """
    x = as_matrix(x, "x")
    d, n = x.shape
    z = np.zeros((n, n))
    j = np.zeros((n, n))
    e = np.zeros((d, n))
    y1 = np.zeros((d, n))
    y2 = np.zeros((n, n))
    mu = cfg.mu0
    factor = gram_factor(x)
    timing = {"z_step": 0.0, "e_step": 0.0, "j_step": 0.0, "multiplier_step": 0.0}
    history = []
    converged = False

    for it in range(1, cfg.max_iter + 1):
        t0 = time.perf_counter()
        if cfg.psd:
            j = prox.psd_eig_threshold(z + y2 / mu, 1.0 / mu)
        else:
            j = prox.svt(z + y2 / mu, 1.0 / mu)
        timing["j_step"] += time.perf_counter() - t0
        _check_finite(j, "j-step", it)

        t0 = time.perf_counter()
        g = x - x @ z + y1 / mu
        if cfg.noise_norm == "l1":
            e = prox.shrink_l1(g, cfg.lam / mu)
        else:
            e = prox.shrink_l21(g, cfg.lam / mu)
        timing["e_step"] += time.perf_counter() - t0
        _check_finite(e, "e-step", it)

        t0 = time.perf_counter()
        z = update_coefficient(x, e, j, y1, y2, mu, factor)
        timing["z_step"] += time.perf_counter() - t0
        _check_finite(z, "z-step", it)

        r1 = x - x @ z - e
        r2 = z - j
        primal = float(np.abs(r1).max())
        gap = float(np.abs(r2).max())
        objective = float(np.linalg.svd(j, compute_uv=False).sum()) + cfg.lam * _noise_value(e, cfg.noise_norm)
        history.append(IterationStat(it, primal, gap, objective))

        if primal <= cfg.tol and gap <= cfg.tol:
            converged = True
            break

        t0 = time.perf_counter()
        y1 += mu * r1
        y2 += mu * r2
        mu = min(cfg.rho * mu, cfg.mu_max)
        timing["multiplier_step"] += time.perf_counter() - t0

    return SolveResult(
        z=j if cfg.psd else z,
        e=e,
        iterations=len(history),
        converged=converged,
        history=history,
        timing=timing,
    )


def spectrum_report(z, thresholds=(1e-3, 0.5)) -> SpectrumReport:
    """Sorted eigen- and singular value spectra of a representation.

    Eigenvalues are those of the symmetrized (z + z^T)/2; counts tally
    eigenvalues strictly above each threshold.
    """
    z = as_matrix(z, "z")
    if z.shape[0] != z.shape[1]:
        raise DimensionError(f"spectrum_report needs a square matrix, got {z.shape}")
    eig = eig_sym((z + z.T) / 2)
    sigma = np.linalg.svd(z, compute_uv=False)
    counts = {float(t): int((eig.values > t).sum()) for t in thresholds}
    return SpectrumReport(
        eigenvalues=eig.values,
        singular_values=sigma,
        count_above=counts,
    )
