"""Least-squares system assembly.

The discrete minimizer of

    J(u) = 1/2 ( |L u - f|^2_{quad, disk}  +  w |u - g|^2_{quad, circle} ),
    w = h_fill^(-weight_exponent),

over the trial space span{Phi(. - x_j)} solves A c = b with

    A_jk = (L Phi_j, L Phi_k)_disk + w (Phi_j, Phi_k)_circle,
    b_j  = (L Phi_j, f)_disk      + w (Phi_j, g)_circle,

both inner products taken in the given quadrature rules.  Assembly streams
the quadrature points in chunks: each chunk contributes a rank-k update
(BLAS syrk on the weighted table) to the upper triangle, which is mirrored
at the end, so A is bitwise symmetric.  The interior and boundary parts are
kept separate so the boundary weight can be changed without reassembly.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg.blas import dsyrk

from .kernel import kernel_matrix, operator_table
from .quadrature import circle_rule, disk_rule

DEFAULT_WEIGHT_EXPONENT = 3.0
_CHUNK_ELEMS = 4_000_000


@dataclass
class LsqSystem:
    """Assembled normal system, interior and boundary parts kept apart.

    ``matrix`` and ``rhs`` recombine the parts with the current boundary
    weight; ``with_weight_exponent`` rescales without touching the tables.
    RHS parts are None when only the matrix was assembled.  The trailing
    fields record what the system was built from, so energy products of
    arbitrary functions use the same rules as the matrix entries.
    """

    interior_matrix: np.ndarray
    boundary_matrix: np.ndarray
    interior_rhs: np.ndarray
    boundary_rhs: np.ndarray
    h_fill: float
    weight_exponent: float
    spec: object = None
    nodes: object = None
    operator: object = None
    interior_rule: object = None
    boundary_rule: object = None

    @property
    def weight(self):
        return self.h_fill ** (-self.weight_exponent)

    @property
    def matrix(self):
        return self.interior_matrix + self.weight * self.boundary_matrix

    @property
    def rhs(self):
        if self.interior_rhs is None:
            raise ValueError("system was assembled without a right-hand side")
        return self.interior_rhs + self.weight * self.boundary_rhs

    def with_weight_exponent(self, weight_exponent):
        return replace(self, weight_exponent=float(weight_exponent))


def _accumulate(upper, table, weights):
    """upper += (sqrt(w) table)^T (sqrt(w) table), upper triangle only."""
    scaled = np.asfortranarray(table * np.sqrt(weights)[:, None])
    out = dsyrk(1.0, scaled, beta=1.0, c=upper, trans=1, lower=0,
                overwrite_c=1)
    if out is not upper:  # the BLAS wrapper copied; keep the accumulator
        upper[:, :] = out
    return upper


def _mirror(upper):
    return np.triu(upper) + np.triu(upper, 1).T


def _stream(spec, operator, centers, rule, table_fn, forcing,
            want_matrix, chunk_elems):
    n = centers.shape[0]
    upper = np.zeros((n, n), order="F") if want_matrix else None
    rhs = np.zeros(n) if forcing is not None else None
    rows = max(1, int(chunk_elems // max(n, 1)))
    pts_all = rule.points
    wts_all = rule.weights
    for start in range(0, pts_all.shape[0], rows):
        pts = pts_all[start:start + rows]
        wts = wts_all[start:start + rows]
        table = table_fn(pts)
        if want_matrix:
            _accumulate(upper, table, wts)
        if rhs is not None:
            rhs += table.T @ (wts * forcing(pts))
    matrix = _mirror(upper) if want_matrix else None
    return matrix, rhs


def _build_parts(spec, operator, nodes, interior_rule, boundary_rule,
                 forcing=None, boundary_values=None,
                 want_matrix=True, chunk_elems=_CHUNK_ELEMS):
    centers = nodes.points
    a_int, b_int = _stream(
        spec, operator, centers, interior_rule,
        lambda pts: operator_table(operator, spec, pts, centers),
        forcing, want_matrix, chunk_elems)
    a_bd, b_bd = _stream(
        spec, operator, centers, boundary_rule,
        lambda pts: kernel_matrix(spec, pts, centers),
        boundary_values, want_matrix, chunk_elems)
    return a_int, a_bd, b_int, b_bd


def assemble_matrix(spec, operator, nodes, interior_rule, boundary_rule,
                    weight_exponent=DEFAULT_WEIGHT_EXPONENT,
                    chunk_elems=_CHUNK_ELEMS):
    """Assemble only the normal matrix parts (no right-hand side)."""
    spec.require_operator_smoothness()
    a_int, a_bd, _, _ = _build_parts(
        spec, operator, nodes, interior_rule, boundary_rule,
        chunk_elems=chunk_elems)
    return LsqSystem(a_int, a_bd, None, None,
                     float(nodes.h_fill), float(weight_exponent),
                     spec=spec, nodes=nodes, operator=operator,
                     interior_rule=interior_rule, boundary_rule=boundary_rule)


def assemble_rhs(spec, problem, nodes, interior_rule, boundary_rule,
                 chunk_elems=_CHUNK_ELEMS):
    """Right-hand side parts (interior, boundary) for a manufactured problem.

    Recomputes the operator tables; prefer assemble_system when the matrix
    is needed too, which shares one streaming pass.
    """
    spec.require_operator_smoothness()
    _, _, b_int, b_bd = _build_parts(
        spec, problem.operator, nodes, interior_rule, boundary_rule,
        forcing=problem.forcing, boundary_values=problem.boundary_values,
        want_matrix=False, chunk_elems=chunk_elems)
    return b_int, b_bd


def assemble_system(spec, problem, nodes, interior_rule, boundary_rule,
                    weight_exponent=DEFAULT_WEIGHT_EXPONENT,
                    chunk_elems=_CHUNK_ELEMS):
    """Matrix and right-hand side in one fused streaming pass."""
    spec.require_operator_smoothness()
    a_int, a_bd, b_int, b_bd = _build_parts(
        spec, problem.operator, nodes, interior_rule, boundary_rule,
        forcing=problem.forcing, boundary_values=problem.boundary_values,
        chunk_elems=chunk_elems)
    return LsqSystem(a_int, a_bd, b_int, b_bd,
                     float(nodes.h_fill), float(weight_exponent),
                     spec=spec, nodes=nodes, operator=problem.operator,
                     interior_rule=interior_rule, boundary_rule=boundary_rule)


def discrete_energy_product(system, u, v=None):
    """Energy inner product (L u, L v)_disk + w (u, v)_circle.

    ``u`` and ``v`` are either coefficient vectors of trial-space functions
    (plain arrays, evaluated exactly as u^T A v) or function objects with
    ``values(points)`` and ``operator_values(op, points)``, integrated with
    the rules the system was assembled from.  ``v`` defaults to ``u``.
    """
    if v is None:
        v = u
    if isinstance(u, np.ndarray) and isinstance(v, np.ndarray):
        interior = u @ system.interior_matrix @ v
        boundary = u @ system.boundary_matrix @ v
        return float(interior + system.weight * boundary)
    if system.interior_rule is None or system.boundary_rule is None:
        raise ValueError("system carries no quadrature rules; "
                         "function-argument energy products need them")
    op = system.operator
    q_in, q_bd = system.interior_rule, system.boundary_rule
    lu = u.operator_values(op, q_in.points)
    lv = lu if v is u else v.operator_values(op, q_in.points)
    ub = u.values(q_bd.points)
    vb = ub if v is u else v.values(q_bd.points)
    interior = q_in.integrate(lu * lv)
    boundary = q_bd.integrate(ub * vb)
    return float(interior + system.weight * boundary)


def matrix_doubling_gap(spec, operator, nodes, domain, n_radial, n_angular,
                        n_boundary, weight_exponent=DEFAULT_WEIGHT_EXPONENT):
    """Largest entry change of A when every quadrature count is doubled.

    The change is measured relative to the largest entry magnitude; a gap
    at roundoff level certifies the resolution for this node set.
    """
    def build(nr, na, nb):
        return assemble_matrix(
            spec, operator, nodes,
            disk_rule(domain, nr, na), circle_rule(domain, nb),
            weight_exponent=weight_exponent).matrix

    coarse = build(n_radial, n_angular, n_boundary)
    fine = build(2 * n_radial, 2 * n_angular, 2 * n_boundary)
    scale = float(np.max(np.abs(fine)))
    return float(np.max(np.abs(fine - coarse))) / max(scale, 1e-300)


def accepted_resolution(spec, operator, nodes, domain, n_radial, n_angular,
                        n_boundary, tol=1e-10, max_doublings=4,
                        weight_exponent=DEFAULT_WEIGHT_EXPONENT):
    """Double the rule sizes until the doubling gap drops below ``tol``.

    Returns the accepted (n_radial, n_angular, n_boundary).  Off by default
    in studies (the default policy is calibrated once instead); this is the
    instrument that calibration uses.
    """
    nr, na, nb = n_radial, n_angular, n_boundary
    for _ in range(max_doublings):
        gap = matrix_doubling_gap(spec, operator, nodes, domain, nr, na, nb,
                                  weight_exponent=weight_exponent)
        if gap <= tol:
            return nr, na, nb
        nr, na, nb = 2 * nr, 2 * na, 2 * nb
    raise RuntimeError(
        "quadrature did not settle below %.1e within %d doublings"
        % (tol, max_doublings))


def dump_matrix(path, matrix):
    """Write a dense matrix: one 'rows cols' header line, then %.16e rows."""
    a = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    with open(path, "w") as fh:
        fh.write("%d %d\n" % a.shape)
        for row in a:
            fh.write(" ".join("%.16e" % v for v in row))
            fh.write("\n")


def dump_vector(path, vector):
    """Write a vector: one length header line, then one %.16e per line."""
    v = np.asarray(vector, dtype=np.float64).ravel()
    with open(path, "w") as fh:
        fh.write("%d\n" % v.shape[0])
        for x in v:
            fh.write("%.16e\n" % x)


def load_matrix(path):
    with open(path) as fh:
        rows, cols = (int(t) for t in fh.readline().split())
        data = np.loadtxt(fh, ndmin=2)
    if data.shape != (rows, cols):
        raise ValueError("matrix dump header disagrees with its data")
    return data


def load_vector(path):
    with open(path) as fh:
        n = int(fh.readline().strip())
        data = np.loadtxt(fh).ravel()
    if data.shape[0] != n:
        raise ValueError("vector dump header disagrees with its data")
    return data
