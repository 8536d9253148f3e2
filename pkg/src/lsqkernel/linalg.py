"""Dense symmetric linear algebra: SPD solves and spectrum extremes.

The normal matrices produced by the least-squares assembly are symmetric
positive definite but can be severely ill conditioned, so the solver pairs a
Cholesky factorization with iterative refinement and reports the achieved
residual instead of silently returning.  Condition numbers come from two
independent routes: a cyclic Jacobi eigensolver (small matrices, full
spectrum) and Lanczos iteration with full reorthogonalization (large
matrices, extreme eigenvalues only, the small end reached through Cholesky
solves).
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._jit import njit

JACOBI_SIZE_LIMIT = 1500


class NotPositiveDefiniteError(Exception):
    """Cholesky breakdown: the matrix is not numerically positive definite."""


def _require_symmetric(a, what):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("%s needs a square matrix" % what)
    norm = float(np.linalg.norm(a))
    asym = float(np.linalg.norm(a - a.T))
    if asym > 1e-12 * max(norm, 1e-300):
        raise ValueError(
            "%s needs a symmetric matrix (relative asymmetry %.2e); "
            "symmetrize the input first" % (what, asym / max(norm, 1e-300)))
    return a


@dataclass(frozen=True)
class SpdFactorization:
    """Lower Cholesky factor L with A = L L^T."""

    lower: np.ndarray

    def solve(self, rhs):
        return scipy.linalg.cho_solve((self.lower, True), rhs, check_finite=False)

    @property
    def log_det(self):
        return 2.0 * float(np.sum(np.log(np.diag(self.lower))))


def spd_factorization(a):
    """Cholesky-factor a symmetric positive definite matrix.

    Raises ValueError for a non-symmetric input and
    NotPositiveDefiniteError when the factorization breaks down; the two
    failures call for different fixes and are kept distinct.
    """
    a = _require_symmetric(a, "spd_factorization")
    try:
        lower = scipy.linalg.cholesky(a, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as err:
        raise NotPositiveDefiniteError(
            "Cholesky factorization failed: %s" % err) from None
    return SpdFactorization(lower=lower)


@dataclass(frozen=True)
class CholeskySolution:
    """Solve result with its achieved backward error.

    ``relative_residual`` is |b - A x| / |b| after ``refinements`` rounds of
    iterative refinement; ``warning`` is set when the residual target was
    missed (expect that once the condition number nears 1/eps).
    """

    coefficients: np.ndarray
    relative_residual: float
    refinements: int
    warning: str = None


def cholesky_solve(a, b, target=1e-10, max_refine=5):
    """Solve A x = b (SPD A) with iterative refinement to ``target``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    fac = spd_factorization(a)
    norm_b = float(np.linalg.norm(b))
    if norm_b == 0.0:
        return CholeskySolution(np.zeros_like(b), 0.0, 0)
    x = fac.solve(b)
    rel = float(np.linalg.norm(b - a @ x)) / norm_b
    refinements = 0
    while rel > target and refinements < max_refine:
        x_new = x + fac.solve(b - a @ x)
        rel_new = float(np.linalg.norm(b - a @ x_new)) / norm_b
        if rel_new >= 0.5 * rel:
            if rel_new < rel:
                x, rel = x_new, rel_new
                refinements += 1
            break  # refinement has stagnated
        x, rel = x_new, rel_new
        refinements += 1
    warning = None
    if rel > target:
        warning = ("solve residual %.3e above target %.1e "
                   "after %d refinement rounds" % (rel, target, refinements))
    return CholeskySolution(x, rel, refinements, warning)


@njit(cache=True)
def _jacobi_sweep_impl(a, tol_off, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if math.sqrt(off) <= tol_off:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    sign = 1.0 if theta >= 0.0 else -1.0
                    t = sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[p, k] = a[k, p]
                    a[k, q] = s * akp + c * akq
                    a[q, k] = a[k, q]
    off = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            off += 2.0 * a[i, j] * a[i, j]
    if math.sqrt(off) <= tol_off:
        return max_sweeps
    return -1


def jacobi_eigenvalues(a, tol=1e-12, max_sweeps=30):
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Returns them sorted ascending.  Convergence (off-diagonal Frobenius mass
    below tol * |A|_F) is quadratic once sweeps start to bite; failure to
    converge raises rather than returning silently wrong numbers.
    """
    a = _require_symmetric(a, "jacobi_eigenvalues")
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    tol_off = tol * max(float(np.linalg.norm(a)), 1e-300)
    sweeps = _jacobi_sweep_impl(work, tol_off, max_sweeps)
    if sweeps < 0:
        raise RuntimeError(
            "Jacobi iteration did not converge in %d sweeps" % max_sweeps)
    return np.sort(np.diag(work))


def _lanczos_largest(matvec, n, tol=1e-8, max_steps=400, seed=0):
    """Largest eigenvalue of an SPD operator by Lanczos iteration.

    Full reorthogonalization keeps the basis clean (no ghost copies of
    converged Ritz values); the stopping test is the standard residual bound
    |beta_j * s_last| <= tol * |theta| for the top Ritz pair.
    """
    steps = min(max_steps, n)  # the Krylov space is exhausted after n steps
    rng = np.random.default_rng(seed)
    q = rng.standard_normal(n)
    q /= np.linalg.norm(q)
    basis = np.empty((steps, n))
    alphas = np.empty(steps)
    betas = np.empty(steps)
    theta = 0.0
    for j in range(steps):
        basis[j] = q
        w = matvec(q)
        alphas[j] = float(q @ w)
        # Classical Gram-Schmidt applied twice: one pass leaves O(eps)
        # components that compound over steps and derail the recurrence.
        w = w - basis[:j + 1].T @ (basis[:j + 1] @ w)
        w = w - basis[:j + 1].T @ (basis[:j + 1] @ w)
        beta = float(np.linalg.norm(w))
        tri = np.diag(alphas[:j + 1])
        if j > 0:
            idx = np.arange(j)
            tri[idx, idx + 1] = betas[:j]
            tri[idx + 1, idx] = betas[:j]
        evals, evecs = np.linalg.eigh(tri)
        theta = float(evals[-1])
        resid = abs(beta * evecs[-1, -1])
        if resid <= tol * max(abs(theta), 1e-300):
            return theta, True, j + 1
        if j + 1 == n:
            return theta, True, n  # full basis: spectrum exact to roundoff
        if beta <= 1e-13 * max(abs(theta), 1e-300):
            return theta, True, j + 1  # invariant subspace reached
        betas[j] = beta
        q = w / beta
    return theta, False, steps


@dataclass(frozen=True)
class SpectrumEstimate:
    """Extreme eigenvalues and 2-norm condition number of an SPD matrix."""

    lam_max: float
    lam_min: float
    cond: float
    method: str
    converged: bool
    warning: str = None


def condition_number(a, method="auto", tol=1e-8):
    """Spectral condition number of a symmetric positive definite matrix.

    ``method`` is "dense" (full spectrum by cyclic Jacobi sweeps, meant for
    modest sizes), "iterative" (extreme eigenvalues only; the small end
    comes from Lanczos on A^-1 through a Cholesky factorization), or
    "auto" to switch on size.
    """
    a = _require_symmetric(a, "condition_number")
    n = a.shape[0]
    if method == "auto":
        method = "dense" if n <= JACOBI_SIZE_LIMIT else "iterative"
    if method == "dense":
        eigs = jacobi_eigenvalues(a)
        lam_max = float(eigs[-1])
        lam_min = float(eigs[0])
        if lam_min <= 0.0:
            return SpectrumEstimate(
                lam_max, lam_min, np.inf, "dense", True,
                "matrix is numerically indefinite (lam_min = %.3e)" % lam_min)
        return SpectrumEstimate(lam_max, lam_min, lam_max / lam_min,
                                "dense", True)
    if method != "iterative":
        raise ValueError("method must be 'auto', 'dense' or 'iterative'")
    lam_max, ok_max, _ = _lanczos_largest(lambda v: a @ v, n, tol=tol)
    try:
        fac = spd_factorization(a)
    except NotPositiveDefiniteError as err:
        return SpectrumEstimate(
            lam_max, np.nan, np.inf, "iterative", False,
            "smallest eigenvalue unavailable: %s" % err)
    inv_max, ok_min, _ = _lanczos_largest(fac.solve, n, tol=tol)
    lam_min = 1.0 / inv_max
    warning = None
    converged = ok_max and ok_min
    if not converged:
        warning = "Lanczos iteration hit its step limit; estimate is approximate"
    return SpectrumEstimate(lam_max, lam_min, lam_max / lam_min,
                            "iterative", converged, warning)
