"""Independent reference computations used to check the library.

Each oracle reaches its answer by a different route than the code under
test: characteristic polynomials instead of LAPACK eigensolvers, projected
gradient descent instead of closed forms, Newton's polar iteration instead
of the SVD, exhaustive grids instead of shrinkage formulas, and exhaustive
partition enumeration instead of spectral embeddings.
"""

import itertools

import numpy as np


def char_poly_eigenvalues(a):
    """Eigenvalues of a real symmetric matrix via its characteristic polynomial.

    Coefficients come from the Faddeev-LeVerrier recursion (matrix products
    and traces only); the roots come from numpy's companion-matrix solver.
    No symmetric eigensolver is involved on `a` itself.
    """
    n = a.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    m = np.eye(n)
    for k in range(1, n + 1):
        am = a @ m
        c = -np.trace(am) / k
        coeffs[k] = c
        m = am + c * np.eye(n)
    roots = np.roots(coeffs)
    return np.sort(roots.real)[::-1]


def project_psd(m):
    """Euclidean projection onto the symmetric PSD cone."""
    sym = (m + m.T) / 2
    lam, q = np.linalg.eigh(sym)
    return (q * np.maximum(lam, 0.0)) @ q.T


def psd_prox_objective(m, g, tau):
    """tau*||M||_* + 0.5*||M - G||_F^2 for PSD M (nuclear norm = trace)."""
    return tau * np.trace(m) + 0.5 * np.linalg.norm(m - g, "fro") ** 2


def pg_psd_prox(g, tau, step=0.3, iters=3000):
    """Projected gradient descent for min tau*tr(M) + 0.5||M-G||^2, M PSD.

    First-order and iterative, started from zero; converges linearly for
    this strongly convex objective, so the tail iterations are free.
    """
    gsym = (g + g.T) / 2
    eye = np.eye(g.shape[0])
    m = np.zeros_like(gsym)
    for _ in range(iters):
        m_new = project_psd(m - step * (tau * eye + m - gsym))
        if np.abs(m_new - m).max() < 1e-14:
            return m_new
        m = m_new
    return m


def polar_factor_newton(a, iters=80):
    """Orthogonal polar factor of a nonsingular square matrix.

    Newton's iteration Y <- (Y + Y^{-T})/2 uses only inversions; the
    result U satisfies <U, A> = ||A||_* (trace of the positive factor).
    """
    y = np.asarray(a, dtype=float).copy()
    for _ in range(iters):
        y_next = (y + np.linalg.inv(y).T) / 2
        if np.abs(y_next - y).max() < 1e-15:
            return y_next
        y = y_next
    return y


def nuclear_norm_dual_sample(a, n_samples=500, seed=0):
    """Best <Y, A> over unit-operator-norm probes Y.

    Probes are random Gaussian matrices scaled to operator norm one, plus
    the Newton polar factor of A, which attains the supremum.
    """
    rng = np.random.default_rng(seed)
    best = -np.inf
    for _ in range(n_samples):
        y = rng.standard_normal(a.shape)
        y /= np.linalg.svd(y, compute_uv=False)[0]
        best = max(best, float(np.tensordot(y, a)))
    up = polar_factor_newton(a)
    best = max(best, float(np.tensordot(up, a)))
    return best


def grid_min_scalar_l1(g, tau, half_width=2.0, step=1e-6):
    """Grid-search argmin of tau*|e| + 0.5*(e - g)^2 for a scalar g."""
    lo = min(0.0, g) - half_width
    hi = max(0.0, g) + half_width
    grid = np.arange(lo, hi + step, step)
    values = tau * np.abs(grid) + 0.5 * (grid - g) ** 2
    return float(grid[np.argmin(values)])


def grid_min_radial_l21(col, tau, step=1e-6):
    """Radial grid-search argmin of tau*||e|| + 0.5*||e - col||^2.

    The minimizer shares col's direction, so search the radius only.
    """
    r = np.linalg.norm(col)
    if r == 0:
        return np.zeros_like(col)
    grid = np.arange(0.0, r + step, step)
    values = tau * grid + 0.5 * (grid - r) ** 2
    t = float(grid[np.argmin(values)])
    return (t / r) * col


def normalized_cut(w, mask):
    """Two-way normalized cut of affinity w for the partition given by mask."""
    deg = w.sum(axis=1)
    cut = float(w[np.ix_(mask, ~mask)].sum())
    vol_a = float(deg[mask].sum())
    vol_b = float(deg[~mask].sum())
    if vol_a == 0 or vol_b == 0:
        return np.inf
    return cut * (1.0 / vol_a + 1.0 / vol_b)


def best_two_way_partition(w):
    """Exhaustive minimizer of the two-way normalized cut (n <= ~18)."""
    n = w.shape[0]
    best_mask, best_value = None, np.inf
    for bits in itertools.product((False, True), repeat=n - 1):
        mask = np.array((True,) + bits)  # fix point 0 to side A: halves the space
        value = normalized_cut(w, mask)
        if value < best_value:
            best_value = value
            best_mask = mask
    return best_mask, best_value


def finite_difference_gradient(fn, z, h=1e-5):
    """Central-difference gradient of a scalar function of a matrix."""
    grad = np.zeros_like(z)
    for idx in np.ndindex(z.shape):
        zp = z.copy()
        zp[idx] += h
        zm = z.copy()
        zm[idx] -= h
        grad[idx] = (fn(zp) - fn(zm)) / (2 * h)
    return grad
