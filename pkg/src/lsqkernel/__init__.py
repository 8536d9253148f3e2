"""Weighted least-squares kernel solver for elliptic Dirichlet problems.

The trial space is spanned by translates of a Whittle-Matern-Sobolev kernel
on a scattered node set in the unit disk.  The discrete solution minimizes

    J(u) = ||L u - f||^2_{L2(domain)} + h^{-3} ||u - g||^2_{L2(boundary)}

over that space, where L is a second-order elliptic operator, h is the fill
distance of the nodes, and the integrals are evaluated by fixed quadrature
rules.  Submodules follow the pipeline: ``specfun`` and ``kernel`` build the
basis, ``geometry``/``quadrature``/``problem`` set up the discrete problem,
``assembly`` forms the normal equations, ``linalg`` solves them, ``postproc``
measures errors, and ``cli`` drives convergence and conditioning studies.
"""

from .geometry import DiskDomain, NodeSet, fill_distance, regular_disk_nodes, separation_radius
from .kernel import KernelSpec, RadialProfile, apply_operator, kernel_eval, kernel_grad, kernel_hess, phi
from .linalg import (
    NotPositiveDefiniteError,
    SpdFactorization,
    SpectrumEstimate,
    cholesky_solve,
    condition_number,
    jacobi_eigenvalues,
)
from .problem import EllipticOperator, ManufacturedProblem, radial_power_solution, reference_operator
from .quadrature import QuadratureRule, circle_rule, disk_rule, gauss_legendre
from .specfun import bessel_k, bessel_k_dz

__all__ = [
    "DiskDomain",
    "EllipticOperator",
    "KernelSpec",
    "ManufacturedProblem",
    "NodeSet",
    "NotPositiveDefiniteError",
    "QuadratureRule",
    "RadialProfile",
    "SpdFactorization",
    "SpectrumEstimate",
    "apply_operator",
    "bessel_k",
    "bessel_k_dz",
    "cholesky_solve",
    "circle_rule",
    "condition_number",
    "disk_rule",
    "fill_distance",
    "gauss_legendre",
    "jacobi_eigenvalues",
    "kernel_eval",
    "kernel_grad",
    "kernel_hess",
    "phi",
    "radial_power_solution",
    "reference_operator",
    "regular_disk_nodes",
    "separation_radius",
]

__version__ = "0.1.0"
