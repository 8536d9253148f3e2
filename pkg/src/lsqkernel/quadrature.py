"""Quadrature rules for the disk and its boundary circle.

The disk rule is a tensor product in polar coordinates: Gauss-Legendre in
the radial direction (mapped to [0, R] and carrying the Jacobian r) and the
periodic trapezoid rule in the angle, which for smooth integrands converges
spectrally and is the natural choice on a circle.  The boundary rule is the
same periodic trapezoid on the circle itself.
"""

import math
from dataclasses import dataclass

import numpy as np

MAX_GAUSS_ORDER = 512


@dataclass(frozen=True)
class QuadratureRule:
    """Points (m, 2), positive weights (m,); boundary rules keep angles."""

    points: np.ndarray
    weights: np.ndarray
    angles: np.ndarray = None

    @property
    def count(self):
        return self.weights.shape[0]

    @property
    def total_weight(self):
        return float(np.sum(self.weights))

    def integrate(self, values):
        """Weighted sum of point values (last axis runs over the points)."""
        return np.asarray(values) @ self.weights


def gauss_legendre(n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Roots of the Legendre polynomial P_n are found by Newton iteration from
    the Chebyshev-like initial guess cos(pi (i + 3/4) / (n + 1/2)), then
    w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_GAUSS_ORDER:
        raise ValueError("gauss_legendre supports n <= %d" % MAX_GAUSS_ORDER)
    if n == 1:
        return np.zeros(1), np.full(1, 2.0)
    i = np.arange(n, dtype=np.float64)
    x = np.cos(math.pi * (i + 0.75) / (n + 0.5))
    for _ in range(100):
        p_prev = np.ones_like(x)
        p = x.copy()
        for k in range(2, n + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
        dp = n * (x * p - p_prev) / (x * x - 1.0)
        step = p / dp
        x -= step
        if np.max(np.abs(step)) < 1e-15:
            break
    x = 0.5 * (x - x[::-1])  # enforce the exact symmetry of the root set
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


def disk_rule(domain, n_radial, n_angular):
    """Tensor-product rule over the disk; exact total weight pi R^2 - O(eps).

    Radial nodes r_i = R (t_i + 1) / 2 with Gauss-Legendre (t_i, w_i) carry
    weight (R / 2) w_i r_i; angles theta_j = 2 pi j / n carry weight 2 pi / n.
    """
    if n_radial < 2:
        raise ValueError("n_radial must be >= 2")
    if n_angular < 4:
        raise ValueError("n_angular must be >= 4")
    t, w = gauss_legendre(n_radial)
    radius = domain.radius
    r = radius * (t + 1.0) / 2.0
    w_r = (radius / 2.0) * w * r
    theta = 2.0 * math.pi * np.arange(n_angular) / n_angular
    w_t = 2.0 * math.pi / n_angular
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    x = (r[:, None] * cos_t[None, :]).ravel()
    y = (r[:, None] * sin_t[None, :]).ravel()
    weights = np.repeat(w_r * w_t, n_angular)
    return QuadratureRule(points=np.column_stack([x, y]), weights=weights)


def circle_rule(domain, n):
    """Equal-weight rule on the boundary circle (periodic trapezoid)."""
    if n < 8:
        raise ValueError("n must be >= 8")
    radius = domain.radius
    theta = 2.0 * math.pi * np.arange(n) / n
    pts = radius * np.column_stack([np.cos(theta), np.sin(theta)])
    weights = np.full(n, 2.0 * math.pi * radius / n)
    return QuadratureRule(points=pts, weights=weights, angles=theta)


def resolution_policy(spacing, scale=1.0):
    """Default rule sizes (n_radial, n_angular, n_boundary) for a node spacing.

    Resolution grows inversely with the spacing so quadrature error stays
    below the discretization error on every refinement level; ``scale``
    multiplies the radial count (the other two follow it).
    """
    if not spacing > 0.0:
        raise ValueError("spacing must be positive")
    if not scale > 0.0:
        raise ValueError("scale must be positive")
    base = max(40, 4 * int(math.ceil(1.0 / spacing)))
    n_radial = int(math.ceil(scale * base))
    return n_radial, 2 * n_radial, 4 * n_radial


def default_rules(domain, spacing, scale=1.0):
    """Disk and circle rules at the default resolution for ``spacing``."""
    n_radial, n_angular, n_boundary = resolution_policy(spacing, scale=scale)
    return disk_rule(domain, n_radial, n_angular), circle_rule(domain, n_boundary)
