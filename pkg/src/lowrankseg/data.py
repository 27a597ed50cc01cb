"""Synthetic union-of-subspaces data, noise injection, and matrix file I/O."""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ParameterError, ParseError
from .linalg import as_matrix


@dataclass(frozen=True)
class Dataset:
    """Data matrix (ambient_dim x n) with per-column group labels, ordered by group."""

    x: np.ndarray
    labels: np.ndarray
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CorruptionSpec:
    """How to corrupt a matrix.

    model        "random_entries" (uniformly random cells) or
                 "sample_specific" (whole columns)
    fraction     share of entries resp. columns to touch, in [0, 1]
    sigma_scale  total noise magnitude relative to ||X||_F; the per-entry
                 standard deviation is sigma_scale * ||X||_F / sqrt(d*n)
    seed         RNG seed, corruption is deterministic per seed
    """

    model: str
    fraction: float
    sigma_scale: float
    seed: int

    def __post_init__(self):
        if self.model not in ("random_entries", "sample_specific"):
            raise ParameterError(f"unknown corruption model {self.model!r}")
        if not 0.0 <= self.fraction <= 1.0:
            raise ParameterError(f"fraction must lie in [0, 1], got {self.fraction}")
        if self.sigma_scale < 0:
            raise ParameterError(f"sigma_scale must be >= 0, got {self.sigma_scale}")


def _random_orthonormal(rng, rows, cols):
    q, r = np.linalg.qr(rng.standard_normal((rows, cols)))
    # canonical column signs so the basis is a pure function of the RNG draw
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def generate_toy(
    seed: int,
    num_subspaces: int = 5,
    subspace_dim: int = 4,
    ambient_dim: int = 100,
    samples_per: int = 20,
) -> Dataset:
    """Sample points from independent low-dimensional subspaces.

    The first basis is a random orthonormal ambient_dim x subspace_dim
    matrix; each subsequent basis is the previous one transformed by a
    single random rotation drawn once per dataset. Every subspace
    contributes samples_per columns U_i @ Q_i with Q_i iid standard normal,
    so the clean data matrix has rank num_subspaces * subspace_dim and the
    columns arrive sorted by group.
    """
    if num_subspaces < 1 or subspace_dim < 1:
        raise ParameterError("num_subspaces and subspace_dim must be >= 1")
    if num_subspaces * subspace_dim > ambient_dim:
        raise ParameterError(
            f"need num_subspaces*subspace_dim <= ambient_dim, got "
            f"{num_subspaces}*{subspace_dim} > {ambient_dim}"
        )
    if samples_per <= subspace_dim:
        raise ParameterError(
            f"samples_per must exceed subspace_dim, got {samples_per} <= {subspace_dim}"
        )
    rng = np.random.default_rng(seed)
    basis = _random_orthonormal(rng, ambient_dim, subspace_dim)
    rotation = _random_orthonormal(rng, ambient_dim, ambient_dim)
    if np.linalg.det(rotation) < 0:
        rotation[:, 0] = -rotation[:, 0]
    blocks = []
    for _ in range(num_subspaces):
        coeffs = rng.standard_normal((subspace_dim, samples_per))
        blocks.append(basis @ coeffs)
        basis = rotation @ basis
    x = np.hstack(blocks)
    labels = np.repeat(np.arange(num_subspaces), samples_per)
    meta = {
        "num_subspaces": num_subspaces,
        "subspace_dim": subspace_dim,
        "ambient_dim": ambient_dim,
        "samples_per": samples_per,
        "seed": int(seed),
        "corruption": None,
    }
    return Dataset(x=x, labels=labels, meta=meta)


def corrupt(x, spec: CorruptionSpec):
    """Additive Gaussian corruption; returns (corrupted copy, boolean mask).

    The per-entry noise standard deviation is
    spec.sigma_scale * ||x||_F / sqrt(d*n), so corrupting every entry
    yields expected total noise magnitude sigma_scale * ||x||_F.
    """
    x = as_matrix(x, "x")
    d, n = x.shape
    rng = np.random.default_rng(spec.seed)
    sigma = spec.sigma_scale * np.linalg.norm(x, "fro") / math.sqrt(d * n)
    out = x.copy()
    mask = np.zeros_like(x, dtype=bool)
    if spec.model == "random_entries":
        count = round(spec.fraction * d * n)
        if count > 0:
            flat = rng.choice(d * n, size=count, replace=False)
            mask.flat[flat] = True
            out.flat[flat] += rng.normal(0.0, sigma, size=count)
    else:  # sample_specific
        count = round(spec.fraction * n)
        if count > 0:
            cols = rng.choice(n, size=count, replace=False)
            mask[:, cols] = True
            out[:, cols] += rng.normal(0.0, sigma, size=(d, count))
    return out, mask


def save_matrix(path, m) -> None:
    """Write a matrix as headerless CSV, one row per line, 17 significant digits."""
    m = as_matrix(m, "m")
    with open(path, "w", encoding="ascii") as fh:
        for row in m:
            fh.write(",".join(format(v, ".17g") for v in row))
            fh.write("\n")


def load_matrix(path) -> np.ndarray:
    """Read a headerless CSV matrix written by save_matrix.

    Raises ParseError naming the offending line for ragged rows or
    non-numeric/non-finite tokens, and for an empty file.
    """
    rows = []
    width: Optional[int] = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = line.split(",")
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise ParseError(
                    f"{path}: line {lineno}: expected {width} columns, got {len(tokens)}"
                )
            try:
                row = [float(t) for t in tokens]
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: non-numeric token") from None
            if not all(math.isfinite(v) for v in row):
                raise ParseError(f"{path}: line {lineno}: non-finite value")
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: empty matrix")
    return np.array(rows, dtype=np.float64)
