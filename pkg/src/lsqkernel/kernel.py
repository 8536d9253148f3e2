"""Whittle-Matern-Sobolev kernel: values, derivatives, operator application.

The kernel is the radial function

    Phi(x - y) = phi(r) = (eps r)^nu K_nu(eps r),   nu = tau - d/2,  r = |x - y|,

whose Fourier transform behaves like (1 + |w|^2)^(-tau), so its native space
is the Sobolev space H^tau.  Everything a second-order operator needs comes
from three radial quantities that share one structural form W_m(z) = z^m K_m(z):

    value          phi(r)            =        W_nu(eps r)
    slope_over_r   phi'(r)/r         = -eps^2 W_{nu-1}(eps r)
    quad_coeff     (phi''-phi'/r)/r^2 =  eps^4 W_{nu-2}(eps r)

so that  grad Phi = slope_over_r * (x - y)  and
Hess Phi = quad_coeff * (x-y)(x-y)^T + slope_over_r * I,  with no division by
r anywhere.  W_m(0) = 2^(m-1) Gamma(m) for m > 0; below eps*r = 1e-6 each
part switches to its truncated small-argument series (limit plus leading
correction), removing the 0 * inf hazards of forming z^m K_m directly.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._jit import HAVE_NUMBA, njit
from .specfun import EULER_GAMMA, _k_chain, _temme_gammas

NEAR_ORIGIN_Z = 1e-6


@dataclass(frozen=True)
class KernelSpec:
    """Kernel parameters: smoothness exponent tau, shape epsilon, dimension.

    ``tau > dim/2`` makes the kernel well defined and positive definite;
    operator contexts additionally need ``tau >= dim/2 + 2`` so that second
    derivatives exist classically.
    """

    tau: float
    epsilon: float
    dim: int = 2

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.tau > self.dim / 2.0:
            raise ValueError(
                "tau must exceed dim/2 (= %g); got tau = %g" % (self.dim / 2.0, self.tau)
            )
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")

    @property
    def nu(self):
        return self.tau - self.dim / 2.0

    def require_gradient_smoothness(self):
        """Gradients need tau > dim/2 + 1 (first derivatives at the origin)."""
        if not self.tau > self.dim / 2.0 + 1.0:
            raise ValueError(
                "kernel gradient needs tau > dim/2 + 1 = %g; got tau = %g"
                % (self.dim / 2.0 + 1.0, self.tau)
            )

    def require_operator_smoothness(self):
        """Second-order operator contexts need tau >= dim/2 + 2.

        The bound is checked with a 1e-9 tolerance so the boundary case
        (tau = dim/2 + 2, whose Hessian is still continuous) is admitted.
        """
        floor = self.dim / 2.0 + 2.0
        if self.tau + 1e-9 < floor:
            raise ValueError(
                "second-order operator application needs tau >= dim/2 + 2 = %g; "
                "got tau = %g. Increase tau (e.g. to %g) or drop the operator term."
                % (floor, self.tau, floor)
            )


# Small-argument handling of W_m(z) = z^m K_m(z), per order m:
#   mode 0  m == 0          W_0 = K_0 ~ -log(z/2) - gamma
#   mode 1  0 < m < 0.99    W_m ~ L (1 + (Gamma(-m)/Gamma(m)) (z/2)^(2m))
#   mode 2  0.99<=m<=1.01   W_m ~ L                (resonant window: limit only)
#   mode 3  m > 1.01        W_m ~ L (1 - z^2/(4(m-1)))
# with L = 2^(m-1) Gamma(m).
def _near_constants(m):
    if m == 0.0:
        return 0, 0.0, 0.0, 0.0
    limit = 2.0 ** (m - 1.0) * math.gamma(m)
    if m < 0.99:
        return 1, limit, math.gamma(-m) / math.gamma(m), 2.0 * m
    if m <= 1.01:
        return 2, limit, 0.0, 0.0
    return 3, limit, 1.0 / (4.0 * (m - 1.0)), 0.0


@njit(cache=True)
def _w_small(zz, mode, limit, c1, c2):
    if mode == 0:
        if zz <= 0.0:
            return np.inf
        return -math.log(0.5 * zz) - EULER_GAMMA
    if mode == 1:
        if zz <= 0.0:
            return limit
        return limit * (1.0 + c1 * math.exp(c2 * math.log(0.5 * zz)))
    if mode == 2:
        return limit
    return limit * (1.0 - c1 * zz * zz)


@njit(cache=True)
def _radial_parts_impl(zf, want, nu, mu, n, gam1, gam2, gampl, gammi,
                       modes, limits, c1, c2, eps2, eps4,
                       out_phi, out_slope, out_quad):
    for i in range(zf.size):
        zz = zf[i]
        if zz < NEAR_ORIGIN_Z:
            out_phi[i] = _w_small(zz, modes[0], limits[0], c1[0], c2[0])
            if want >= 2:
                out_slope[i] = -eps2 * _w_small(zz, modes[1], limits[1], c1[1], c2[1])
            if want >= 3:
                out_quad[i] = eps4 * _w_small(zz, modes[2], limits[2], c1[2], c2[2])
        else:
            km2, km1, kv = _k_chain(zz, mu, n, gam1, gam2, gampl, gammi)
            zp2 = zz ** (nu - 2.0)
            zp1 = zp2 * zz
            zp0 = zp1 * zz
            out_phi[i] = zp0 * kv
            if want >= 2:
                out_slope[i] = -eps2 * zp1 * km1
            if want >= 3:
                out_quad[i] = eps4 * zp2 * km2


class RadialProfile:
    """Cached radial evaluator for one KernelSpec.

    ``parts(r, want)`` returns (phi, slope_over_r, quad_coeff) arrays; the
    ``want`` level (1, 2 or 3) controls how many are actually computed, and
    the caller promises the matching smoothness (checked here).
    """

    def __init__(self, spec):
        self.spec = spec
        nu = spec.nu
        self.nu = nu
        n = int(math.floor(nu + 0.5))
        self._n = n
        self._mu = nu - n
        self._gammas = _temme_gammas(self._mu)
        self._eps2 = spec.epsilon ** 2
        self._eps4 = spec.epsilon ** 4
        modes = np.zeros(3, dtype=np.int64)
        limits = np.zeros(3)
        c1 = np.zeros(3)
        c2 = np.zeros(3)
        for k, m in enumerate((nu, nu - 1.0, nu - 2.0)):
            if m < 0.0:
                continue  # slot unused at this smoothness; guarded by `want`
            modes[k], limits[k], c1[k], c2[k] = _near_constants(m)
        self._modes = modes
        self._limits = limits
        self._c1 = c1
        self._c2 = c2
        # r -> 0 limits (used directly for exact-zero arguments)
        self.value0 = 2.0 ** (nu - 1.0) * math.gamma(nu)
        if nu > 1.0:
            self.slope0 = -self._eps2 * 2.0 ** (nu - 2.0) * math.gamma(nu - 1.0)
        else:
            self.slope0 = -np.inf
        self.curvature0 = self.slope0

    def parts(self, r, want=3):
        if want >= 2:
            self.spec.require_gradient_smoothness()
        if want >= 3:
            self.spec.require_operator_smoothness()
        r = np.asarray(r, dtype=np.float64)
        z = np.ascontiguousarray((self.spec.epsilon * r).ravel())
        phi_f = np.empty_like(z)
        slope_f = np.empty_like(z) if want >= 2 else np.zeros(1)
        quad_f = np.empty_like(z) if want >= 3 else np.zeros(1)
        _radial_parts_impl(z, want, self.nu, self._mu, self._n, *self._gammas,
                           self._modes, self._limits, self._c1, self._c2,
                           self._eps2, self._eps4, phi_f, slope_f, quad_f)
        shape = r.shape
        phi_v = phi_f.reshape(shape)
        slope_v = slope_f.reshape(shape) if want >= 2 else None
        quad_v = quad_f.reshape(shape) if want >= 3 else None
        return phi_v, slope_v, quad_v

    def value(self, r):
        return self.parts(r, want=1)[0]

    def slope_over_r(self, r):
        return self.parts(r, want=2)[1]

    def curvature(self, r):
        """phi''(r) = quad_coeff * r^2 + slope_over_r, with the r = 0 limit."""
        r = np.asarray(r, dtype=np.float64)
        _, slope, quad = self.parts(r, want=3)
        rsq = r * r
        return np.where(rsq > 0.0, quad * rsq + slope, slope)


@lru_cache(maxsize=64)
def _profile_cache(spec):
    return RadialProfile(spec)


def radial_profile(spec):
    """Shared RadialProfile for ``spec`` (profiles are immutable)."""
    return _profile_cache(spec)


def _pair_displacement(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return x - y


def phi(spec, r):
    """Radial profile value phi(r) for r >= 0 (scalar or array)."""
    r_arr = np.asarray(r, dtype=np.float64)
    if r_arr.size and r_arr.min() < 0.0:
        raise ValueError("phi requires r >= 0")
    out = radial_profile(spec).value(r_arr)
    if np.isscalar(r) or r_arr.ndim == 0:
        return float(out)
    return out


def kernel_eval(spec, x, y):
    """Phi(x - y) for points x, y; x may be a batch of shape (m, dim)."""
    d = _pair_displacement(x, y)
    r = np.sqrt(np.sum(d * d, axis=-1))
    out = radial_profile(spec).value(r)
    if out.ndim == 0:
        return float(out)
    return out


def kernel_grad(spec, x, y):
    """Gradient of Phi(. - y) at x; zero at x = y by radial symmetry."""
    spec.require_gradient_smoothness()
    d = _pair_displacement(x, y)
    r = np.sqrt(np.sum(d * d, axis=-1))
    slope = radial_profile(spec).parts(r, want=2)[1]
    return np.asarray(slope)[..., None] * d


def kernel_hess(spec, x, y):
    """Hessian of Phi(. - y) at x; equals phi''(0) * I at x = y."""
    spec.require_operator_smoothness()
    prof = radial_profile(spec)
    d = _pair_displacement(x, y)
    r2 = np.sum(d * d, axis=-1)
    r = np.sqrt(r2)
    _, slope, quad = prof.parts(r, want=3)
    slope = np.asarray(slope)
    quad = np.asarray(quad)
    outer = d[..., :, None] * d[..., None, :]
    # quad can be +inf exactly at r = 0 (tau = dim/2 + 2); that term carries
    # a zero outer product, so mask it rather than multiply.
    quad_safe = np.where(r2 > 0.0, quad, 0.0)
    eye = np.eye(d.shape[-1])
    return quad_safe[..., None, None] * outer + slope[..., None, None] * eye


def kernel_matrix(spec, points, centers):
    """Gram-style table Phi(points_i - centers_j), shape (m, n)."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    cen = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    diff0 = pts[:, None, 0] - cen[None, :, 0]
    diff1 = pts[:, None, 1] - cen[None, :, 1]
    r = np.sqrt(diff0 * diff0 + diff1 * diff1)
    return radial_profile(spec).value(r)


def _coefficient_fields(op, pts):
    """Operator coefficients at pts, as broadcast-ready columns.

    Returns (a00, a01, a11, b0, b1, c, trace_a); scalars when the operator is
    constant, else (m, 1) columns.
    """
    const = getattr(op, "constant", None)
    if const is not None:
        a0, b0v, c0 = const
        a00, a01, a11 = float(a0[0][0]), float(a0[0][1]), float(a0[1][1])
        return a00, a01, a11, float(b0v[0]), float(b0v[1]), float(c0), a00 + a11
    a = op.a(pts)
    b = op.b(pts)
    c = op.c(pts)
    col = lambda v: np.asarray(v, dtype=np.float64).reshape(-1, 1)
    a00, a01, a11 = col(a[:, 0, 0]), col(a[:, 0, 1]), col(a[:, 1, 1])
    return a00, a01, a11, col(b[:, 0]), col(b[:, 1]), col(c), a00 + a11


@njit(cache=True)
def _operator_table_const_impl(px, py, cx, cy, eps, nu, mu, n,
                               gam1, gam2, gampl, gammi,
                               modes, limits, c1, c2, eps2, eps4,
                               a00, a01, a11, b0, b1, cc, tra, out):
    for i in range(px.size):
        xi = px[i]
        yi = py[i]
        for j in range(cx.size):
            dx = xi - cx[j]
            dy = yi - cy[j]
            r2 = dx * dx + dy * dy
            z = eps * math.sqrt(r2)
            if z < NEAR_ORIGIN_Z:
                phi_v = _w_small(z, modes[0], limits[0], c1[0], c2[0])
                slope = -eps2 * _w_small(z, modes[1], limits[1], c1[1], c2[1])
                if r2 > 0.0:
                    quad = eps4 * _w_small(z, modes[2], limits[2], c1[2], c2[2])
                    qf = quad * (a00 * dx * dx + 2.0 * a01 * dx * dy + a11 * dy * dy)
                else:
                    qf = 0.0
            else:
                km2, km1, kv = _k_chain(z, mu, n, gam1, gam2, gampl, gammi)
                zp2 = z ** (nu - 2.0)
                zp1 = zp2 * z
                phi_v = zp1 * z * kv
                slope = -eps2 * zp1 * km1
                quad = eps4 * zp2 * km2
                qf = quad * (a00 * dx * dx + 2.0 * a01 * dx * dy + a11 * dy * dy)
            out[i, j] = -qf - slope * tra + slope * (b0 * dx + b1 * dy) + cc * phi_v


def _operator_table_const(op, spec, pts, cen):
    prof = radial_profile(spec)
    a0, b0v, c0 = op.constant
    a00, a01, a11 = float(a0[0][0]), float(a0[0][1]), float(a0[1][1])
    out = np.empty((pts.shape[0], cen.shape[0]))
    _operator_table_const_impl(
        np.ascontiguousarray(pts[:, 0]), np.ascontiguousarray(pts[:, 1]),
        np.ascontiguousarray(cen[:, 0]), np.ascontiguousarray(cen[:, 1]),
        spec.epsilon, prof.nu, prof._mu, prof._n, *prof._gammas,
        prof._modes, prof._limits, prof._c1, prof._c2,
        prof._eps2, prof._eps4,
        a00, a01, a11, float(b0v[0]), float(b0v[1]), float(c0), a00 + a11,
        out)
    return out


def operator_table(op, spec, points, centers):
    """Table (L Phi(. - centers_j))(points_i) for a second-order operator.

    L u = -a : Hess u + b . grad u + c u with spatially varying (or constant)
    coefficients.  Shape (m, n).  Two-dimensional points only.
    """
    spec.require_operator_smoothness()
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    cen = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if pts.shape[1] != 2 or cen.shape[1] != 2:
        raise ValueError("operator_table is implemented for dim = 2")
    if getattr(op, "constant", None) is not None and HAVE_NUMBA:
        # constant coefficients: one fused pass, no intermediate tables
        return _operator_table_const(op, spec, pts, cen)
    dx = pts[:, None, 0] - cen[None, :, 0]
    dy = pts[:, None, 1] - cen[None, :, 1]
    r2 = dx * dx + dy * dy
    prof = radial_profile(spec)
    phi_v, slope, quad = prof.parts(np.sqrt(r2), want=3)
    a00, a01, a11, b0, b1, c, tr_a = _coefficient_fields(op, pts)
    quadform = a00 * dx * dx + 2.0 * a01 * dx * dy + a11 * dy * dy
    # quad_coeff is +inf exactly at coincident points, where the quadratic
    # form vanishes; mask before multiplying
    quad_safe = np.where(r2 > 0.0, quad, 0.0)
    second = -quad_safe * quadform - slope * tr_a
    first = slope * (b0 * dx + b1 * dy)
    return second + first + c * phi_v


def apply_operator(op, spec, center, x):
    """(L Phi(. - center))(x); x may be a batch of points."""
    x_arr = np.asarray(x, dtype=np.float64)
    single = x_arr.ndim == 1
    table = operator_table(op, spec, np.atleast_2d(x_arr), np.atleast_2d(center))
    if single:
        return float(table[0, 0])
    return table[:, 0]
