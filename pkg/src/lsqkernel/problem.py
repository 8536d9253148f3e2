"""Elliptic model problems: operators, exact solutions, forcing terms.

The Dirichlet problem solved by the pipeline is

    L u = -a : Hess u + b . grad u + c u = f   in the disk,
        u = g                                  on the circle,

with a uniformly elliptic coefficient matrix a.  Problems are manufactured:
an exact solution is chosen and its forcing computed by applying L to it,
so errors of the discrete solver can be measured directly.
"""

from dataclasses import dataclass

import numpy as np

from . import kernel as _kernel


@dataclass(frozen=True)
class EllipticOperator:
    """Second-order operator L u = -a : Hess u + b . grad u + c u.

    ``constant`` holds ((a00, a01), (a10, a11)), (b0, b1), c when the
    coefficients do not vary in space; evaluation then skips per-point
    coefficient tables entirely.  Varying coefficients are supplied as the
    callables a_fn (m, 2, 2), b_fn (m, 2), c_fn (m,).
    """

    constant: tuple = None
    a_fn: object = None
    b_fn: object = None
    c_fn: object = None

    def __post_init__(self):
        if self.constant is None and None in (self.a_fn, self.b_fn, self.c_fn):
            raise ValueError(
                "either constant coefficients or all three of a_fn, b_fn, c_fn")
        if self.constant is not None:
            a, _, _ = self.constant
            if abs(a[0][1] - a[1][0]) > 1e-14:
                raise ValueError("coefficient matrix a must be symmetric")

    @classmethod
    def from_constant(cls, a, b, c):
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        return cls(constant=(
            ((float(a[0, 0]), float(a[0, 1])),
             (float(a[1, 0]), float(a[1, 1]))),
            (float(b[0]), float(b[1])),
            float(c)))

    def a(self, points):
        pts = np.atleast_2d(points)
        if self.constant is not None:
            return np.broadcast_to(np.asarray(self.constant[0]),
                                   (pts.shape[0], 2, 2))
        return np.asarray(self.a_fn(pts), dtype=np.float64)

    def b(self, points):
        pts = np.atleast_2d(points)
        if self.constant is not None:
            return np.broadcast_to(np.asarray(self.constant[1]),
                                   (pts.shape[0], 2))
        return np.asarray(self.b_fn(pts), dtype=np.float64)

    def c(self, points):
        pts = np.atleast_2d(points)
        if self.constant is not None:
            return np.broadcast_to(self.constant[2], (pts.shape[0],))
        return np.asarray(self.c_fn(pts), dtype=np.float64)

    def apply_to_fields(self, points, values, grad, hess):
        """L u from pointwise fields u, grad u, Hess u (leading axis m)."""
        a = self.a(points)
        second = -np.einsum("mij,mij->m", a, np.asarray(hess))
        first = np.einsum("mi,mi->m", self.b(points), np.asarray(grad))
        return second + first + self.c(points) * np.asarray(values)


def reference_operator():
    """The model operator -Laplace + d/dx + d/dy + identity."""
    return EllipticOperator.from_constant(np.eye(2), np.ones(2), 1.0)


def check_uniform_ellipticity(op, points):
    """Smallest eigenvalue of the symmetrized a over the sample points.

    A positive return certifies uniform ellipticity on the sample.
    """
    a = op.a(points)
    sym = 0.5 * (a + np.swapaxes(a, -1, -2))
    half_tr = 0.5 * (sym[:, 0, 0] + sym[:, 1, 1])
    det = sym[:, 0, 0] * sym[:, 1, 1] - sym[:, 0, 1] * sym[:, 1, 0]
    disc = np.sqrt(np.maximum(half_tr * half_tr - det, 0.0))
    return float(np.min(half_tr - disc))


def _masked_power(r2, expo, scale):
    """scale * r2**expo, sent to 0 at r2 = 0 when the exponent is negative."""
    if expo >= 0.0:
        return scale * r2 ** expo
    out = np.zeros_like(r2)
    pos = r2 > 0.0
    out[pos] = scale * r2[pos] ** expo
    return out


class RadialPowerSolution:
    """u(x) = |x|^kappa, the rough-at-the-origin model solution.

    For non-even kappa this lies in the Sobolev space H^k exactly when
    k < kappa + 1 (two dimensions), so it exercises convergence-rate limits.
    Second derivatives exist classically only for kappa >= 2.
    """

    def __init__(self, kappa):
        if not kappa > 0.0:
            raise ValueError("kappa must be positive")
        self.kappa = float(kappa)

    @property
    def sobolev_limit(self):
        """u lies in H^k of a planar domain exactly for k < this bound."""
        return self.kappa + 1.0

    def values(self, points):
        pts = np.atleast_2d(points)
        r2 = np.sum(pts * pts, axis=-1)
        return r2 ** (self.kappa / 2.0)

    def gradient(self, points):
        k = self.kappa
        pts = np.atleast_2d(points)
        r2 = np.sum(pts * pts, axis=-1)
        fac = _masked_power(r2, k / 2.0 - 1.0, k)
        return fac[:, None] * pts

    def hessian(self, points):
        k = self.kappa
        if k < 2.0:
            raise ValueError("hessian of |x|^kappa needs kappa >= 2")
        pts = np.atleast_2d(points)
        r2 = np.sum(pts * pts, axis=-1)
        iso = _masked_power(r2, k / 2.0 - 1.0, k)
        aniso = _masked_power(r2, k / 2.0 - 2.0, k * (k - 2.0))
        outer = pts[:, :, None] * pts[:, None, :]
        return (aniso[:, None, None] * outer
                + iso[:, None, None] * np.eye(2)[None, :, :])


def radial_power_solution(kappa):
    """|x|^kappa solution for forcing assembly; needs a finite Hessian."""
    if kappa < 2.0:
        raise ValueError("radial power solutions need kappa >= 2")
    return RadialPowerSolution(kappa)


class TrialSpaceSolution:
    """u(x) = sum_j c_j Phi(x - x_j): an element of the trial space itself.

    The discrete minimizer must reproduce it to solver precision, which makes
    it the sharpest end-to-end consistency check available.
    """

    def __init__(self, spec, centers, coefficients):
        self.spec = spec
        self.centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
        self.coefficients = np.asarray(coefficients, dtype=np.float64)
        if self.coefficients.shape[0] != self.centers.shape[0]:
            raise ValueError("one coefficient per center required")

    def values(self, points):
        return _kernel.kernel_matrix(self.spec, points, self.centers) @ self.coefficients

    def gradient(self, points):
        pts = np.atleast_2d(points)
        prof = _kernel.radial_profile(self.spec)
        out = np.zeros_like(pts)
        for j in range(self.centers.shape[0]):
            d = pts - self.centers[j]
            r = np.sqrt(np.sum(d * d, axis=-1))
            slope = prof.parts(r, want=2)[1]
            out += self.coefficients[j] * slope[:, None] * d
        return out

    def hessian(self, points):
        pts = np.atleast_2d(points)
        out = np.zeros((pts.shape[0], 2, 2))
        for j in range(self.centers.shape[0]):
            out += self.coefficients[j] * _kernel.kernel_hess(
                self.spec, pts, self.centers[j])
        return out

    def operator_values(self, op, points):
        table = _kernel.operator_table(op, self.spec, points, self.centers)
        return table @ self.coefficients


@dataclass(frozen=True)
class ManufacturedProblem:
    """Operator plus exact solution; forcing and boundary data follow."""

    operator: EllipticOperator
    solution: object

    def forcing(self, points):
        pts = np.atleast_2d(points)
        sol = self.solution
        if hasattr(sol, "operator_values"):
            return sol.operator_values(self.operator, pts)
        return self.operator.apply_to_fields(
            pts, sol.values(pts), sol.gradient(pts), sol.hessian(pts))

    def boundary_values(self, points):
        return self.solution.values(points)


def default_problem(kappa=4.0):
    """The model study problem: reference operator, u = |x|^kappa."""
    return ManufacturedProblem(operator=reference_operator(),
                               solution=radial_power_solution(kappa))


def trial_function_problem(spec, centers, coefficients, operator=None):
    """Manufactured problem whose exact solution lives in the trial space."""
    if operator is None:
        operator = reference_operator()
    return ManufacturedProblem(
        operator=operator,
        solution=TrialSpaceSolution(spec, centers, coefficients))
