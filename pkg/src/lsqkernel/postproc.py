"""Post-processing: solution evaluation, error norms, convergence orders.

Solutions follow a small duck-typed protocol: ``values(points)`` and
``operator_values(op, points)``.  The discrete trial-space solution, exact
manufactured solutions, and differences of any two all satisfy it, so every
norm below is defined once and applies to each.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geometry import boundary_eval_nodes, interior_eval_nodes
from .kernel import kernel_matrix, operator_table
from .linalg import cholesky_solve

_CHUNK_ELEMS = 4_000_000


class DiscreteSolution:
    """Trial-space function u(x) = sum_j c_j Phi(x - x_j).

    Evaluation streams the kernel tables in chunks, so large evaluation
    grids never materialize a full (points x centers) table.
    """

    def __init__(self, spec, nodes, coefficients):
        self.spec = spec
        self.nodes = nodes
        self.coefficients = np.asarray(coefficients, dtype=np.float64)
        if self.coefficients.shape != (nodes.count,):
            raise ValueError("need one coefficient per node")

    def _stream(self, points, table_fn):
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        out = np.empty(pts.shape[0])
        rows = max(1, int(_CHUNK_ELEMS // max(self.nodes.count, 1)))
        for start in range(0, pts.shape[0], rows):
            table = table_fn(pts[start:start + rows])
            out[start:start + rows] = table @ self.coefficients
        return out

    def values(self, points):
        return self._stream(
            points, lambda p: kernel_matrix(self.spec, p, self.nodes.points))

    def operator_values(self, op, points):
        return self._stream(
            points, lambda p: operator_table(op, self.spec, p, self.nodes.points))


class ExactSolution:
    """Protocol adapter for a manufactured solution (values + derivatives)."""

    def __init__(self, solution):
        self._solution = solution

    def values(self, points):
        return self._solution.values(points)

    def operator_values(self, op, points):
        sol = self._solution
        if hasattr(sol, "operator_values"):
            return sol.operator_values(op, points)
        pts = np.atleast_2d(points)
        return op.apply_to_fields(
            pts, sol.values(pts), sol.gradient(pts), sol.hessian(pts))


class SolutionDifference:
    """Pointwise difference of two solutions, itself a solution."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def values(self, points):
        return self.left.values(points) - self.right.values(points)

    def operator_values(self, op, points):
        return (self.left.operator_values(op, points)
                - self.right.operator_values(op, points))


def difference(left, right):
    return SolutionDifference(left, right)


@dataclass(frozen=True)
class ErrorReport:
    """Error norms of one discrete solution against the manufactured truth.

    ``l2_rms`` and ``bdry_l2`` are plain root-mean-square errors over the
    fixed evaluation grids; ``residual_l2`` is the quadrature L2 norm of
    f - L u; ``energy`` is the square root of the objective
    residual^2 + weight * bdry_l2_quad^2 evaluated at the solution, with
    ``bdry_l2_quad`` the quadrature L2 boundary mismatch.
    """

    h_label: float
    h_fill: float
    node_count: int
    l2_rms: float
    bdry_l2: float
    residual_l2: float
    energy: float
    bdry_l2_quad: float


def _rms(values):
    return float(math.sqrt(np.mean(np.square(values))))


def error_report(discrete, problem, domain, interior_rule, boundary_rule,
                 interior_points=None, boundary_points=None,
                 weight_exponent=3.0, h_label=None):
    """All error norms of ``discrete`` for a manufactured problem.

    The evaluation grids default to the standard ones: an interior lattice
    of spacing 0.0204 and 1000 equispaced boundary points.
    """
    if interior_points is None:
        interior_points = interior_eval_nodes(domain)
    if boundary_points is None:
        boundary_points = boundary_eval_nodes(domain)
    exact = problem.solution
    err_in = discrete.values(interior_points) - exact.values(interior_points)
    err_bd = (discrete.values(boundary_points)
              - problem.boundary_values(boundary_points))
    resid = (problem.forcing(interior_rule.points)
             - discrete.operator_values(problem.operator, interior_rule.points))
    residual_l2 = float(math.sqrt(interior_rule.integrate(resid * resid)))
    mis_bd = (discrete.values(boundary_rule.points)
              - problem.boundary_values(boundary_rule.points))
    bdry_l2_quad = float(math.sqrt(boundary_rule.integrate(mis_bd * mis_bd)))
    weight = discrete.nodes.h_fill ** (-weight_exponent)
    energy = math.sqrt(residual_l2 ** 2 + weight * bdry_l2_quad ** 2)
    return ErrorReport(
        h_label=float(discrete.nodes.spacing if h_label is None else h_label),
        h_fill=float(discrete.nodes.h_fill),
        node_count=discrete.nodes.count,
        l2_rms=_rms(err_in),
        bdry_l2=_rms(err_bd),
        residual_l2=residual_l2,
        energy=energy,
        bdry_l2_quad=bdry_l2_quad,
    )


def convergence_order(coarse_error, fine_error, coarse_h, fine_h):
    """Observed order log(e1/e2) / log(h1/h2) between two levels."""
    if min(coarse_error, fine_error, coarse_h, fine_h) <= 0.0:
        raise ValueError("convergence_order needs positive errors and levels")
    if coarse_h == fine_h:
        raise ValueError("convergence_order needs two distinct levels")
    return math.log(coarse_error / fine_error) / math.log(coarse_h / fine_h)


def interpolate(spec, nodes, target):
    """Kernel interpolant of ``target`` on the nodes (Gram matrix solve).

    ``target`` is a callable on points or an array of nodal values.
    """
    if callable(target):
        values = np.asarray(target(nodes.points), dtype=np.float64)
    else:
        values = np.asarray(target, dtype=np.float64)
    if values.shape != (nodes.count,):
        raise ValueError("need one target value per node")
    gram = kernel_matrix(spec, nodes.points, nodes.points)
    gram = 0.5 * (gram + gram.T)  # exact symmetry for the SPD solver
    sol = cholesky_solve(gram, values)
    return DiscreteSolution(spec, nodes, sol.coefficients)
