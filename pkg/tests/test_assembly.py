"""Tests for least-squares system assembly.

Matrix entries are checked against a 4x-resolution brute-force quadrature
oracle; right-hand sides against trial-space substitutions; energy products
against the matrix itself.
"""

from dataclasses import replace

import numpy as np
import pytest

from lsqkernel.assembly import (accepted_resolution, assemble_matrix,
                                assemble_rhs, assemble_system,
                                discrete_energy_product, dump_matrix,
                                dump_vector, load_matrix, load_vector,
                                matrix_doubling_gap)
from lsqkernel.geometry import (DiskDomain, NodeSet, fill_distance,
                                regular_disk_nodes)
from lsqkernel.kernel import KernelSpec, kernel_eval, operator_table
from lsqkernel.linalg import cholesky_solve, spd_factorization
from lsqkernel.postproc import DiscreteSolution, ExactSolution, difference
from lsqkernel.problem import default_problem, trial_function_problem
from lsqkernel.quadrature import circle_rule, disk_rule

DOMAIN = DiskDomain()
SPEC = KernelSpec(tau=4.0, epsilon=10.0)
RULE_IN = disk_rule(DOMAIN, 40, 80)
RULE_BD = circle_rule(DOMAIN, 160)


def small_nodes():
    return regular_disk_nodes(DOMAIN, 0.25)


def test_single_node_diagonal_positive():
    nodes = regular_disk_nodes(DOMAIN, 2.0)
    problem = default_problem()
    system = assemble_matrix(SPEC, problem.operator, nodes, RULE_IN, RULE_BD)
    assert system.matrix.shape == (1, 1)
    assert system.matrix[0, 0] > 0.0


def test_matrix_bitwise_symmetric():
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_matrix(SPEC, problem.operator, nodes, RULE_IN, RULE_BD)
    a = system.matrix
    assert np.array_equal(a, a.T)
    assert np.array_equal(system.interior_matrix, system.interior_matrix.T)
    assert np.array_equal(system.boundary_matrix, system.boundary_matrix.T)


def test_assembled_matrix_is_positive_definite():
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_matrix(SPEC, problem.operator, nodes, RULE_IN, RULE_BD)
    spd_factorization(system.matrix)  # raises if not PD


def test_two_node_entries_match_brute_force():
    # tau = 5 keeps the base rules converged well below the comparison
    # tolerance; the oracle refines every count by 4x.
    spec = KernelSpec(tau=5.0, epsilon=10.0)
    pts = np.array([[0.0, 0.0], [0.5, 0.0]])
    nodes = NodeSet(points=pts, spacing=0.5,
                    h_fill=fill_distance(pts, DOMAIN, resolution=512),
                    q_sep=0.25)
    problem = default_problem()
    base_in = disk_rule(DOMAIN, 80, 160)
    base_bd = circle_rule(DOMAIN, 320)
    system = assemble_matrix(spec, problem.operator, nodes, base_in, base_bd)
    fine_in = disk_rule(DOMAIN, 320, 640)
    fine_bd = circle_rule(DOMAIN, 1280)
    w = nodes.h_fill ** -3.0
    for i in range(2):
        for j in range(2):
            li = operator_table(problem.operator, spec, fine_in.points,
                                pts[i:i + 1])[:, 0]
            lj = operator_table(problem.operator, spec, fine_in.points,
                                pts[j:j + 1])[:, 0]
            bi = kernel_eval(spec, fine_bd.points, pts[i])
            bj = kernel_eval(spec, fine_bd.points, pts[j])
            oracle = (fine_in.integrate(li * lj)
                      + w * fine_bd.integrate(bi * bj))
            assert system.matrix[i, j] == pytest.approx(oracle, rel=1e-9)


def test_rhs_zero_data_gives_zero_vector():
    nodes = small_nodes()
    zero_problem = trial_function_problem(SPEC, nodes.points,
                                          np.zeros(nodes.count))
    b_int, b_bd = assemble_rhs(SPEC, zero_problem, nodes, RULE_IN, RULE_BD)
    assert np.all(b_int == 0.0)
    assert np.all(b_bd == 0.0)


def test_rhs_of_trial_truth_is_matrix_column():
    nodes = small_nodes()
    e0 = np.zeros(nodes.count)
    e0[0] = 1.0
    problem = trial_function_problem(SPEC, nodes.points, e0)
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    column = system.matrix @ e0
    assert np.linalg.norm(system.rhs - column) <= 1e-9 * np.linalg.norm(column)


def test_rhs_linear_in_data():
    nodes = small_nodes()
    rng = np.random.default_rng(14)
    c1 = rng.standard_normal(nodes.count)
    c2 = rng.standard_normal(nodes.count)
    rhs = lambda c: assemble_system(
        SPEC, trial_function_problem(SPEC, nodes.points, c),
        nodes, RULE_IN, RULE_BD).rhs
    b1, b2, b12 = rhs(c1), rhs(c2), rhs(c1 + c2)
    assert np.linalg.norm(b12 - b1 - b2) <= 1e-13 * np.linalg.norm(b12)


def test_energy_product_matches_matrix_entries():
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    n = nodes.count
    rng = np.random.default_rng(16)
    for i, j in rng.integers(0, n, (6, 2)):
        ei = np.zeros(n)
        ej = np.zeros(n)
        ei[i] = 1.0
        ej[j] = 1.0
        got = discrete_energy_product(system, ei, ej)
        assert got == pytest.approx(system.matrix[i, j], rel=1e-13)
        # function-object route through the stored quadrature rules
        fi = DiscreteSolution(SPEC, nodes, ei)
        fj = DiscreteSolution(SPEC, nodes, ej)
        via_rules = discrete_energy_product(system, fi, fj)
        scale = max(abs(system.matrix[i, j]), 1e-12)
        assert abs(via_rules - system.matrix[i, j]) <= 1e-9 * scale


def test_energy_product_of_truth_matches_rhs():
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    truth = ExactSolution(problem.solution)
    n = nodes.count
    for j in (0, n // 2, n - 1):
        ej = np.zeros(n)
        ej[j] = 1.0
        basis_j = DiscreteSolution(SPEC, nodes, ej)
        got = discrete_energy_product(system, truth, basis_j)
        assert got == pytest.approx(system.rhs[j], rel=1e-12)


def test_energy_product_without_rules_raises():
    system = assemble_matrix(SPEC, default_problem().operator, small_nodes(),
                             RULE_IN, RULE_BD)
    bare = replace(system, interior_rule=None, boundary_rule=None)
    with pytest.raises(ValueError):
        discrete_energy_product(bare, ExactSolution(default_problem().solution))


def test_galerkin_residual_small():
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    sol = cholesky_solve(system.matrix, system.rhs)
    resid = np.linalg.norm(system.matrix @ sol.coefficients - system.rhs)
    assert resid <= 1e-10 * np.linalg.norm(system.rhs)


def test_pythagoras_and_stability():
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    coef = cholesky_solve(system.matrix, system.rhs).coefficients
    uh = DiscreteSolution(SPEC, nodes, coef)
    truth = ExactSolution(problem.solution)
    e_uh = discrete_energy_product(system, coef, coef)
    e_truth = discrete_energy_product(system, truth)
    e_err = discrete_energy_product(system, difference(truth, uh))
    assert abs(e_err + e_uh - e_truth) <= 1e-6 * e_truth
    assert np.sqrt(e_uh) <= np.sqrt(e_truth) * (1.0 + 1e-12)


def test_weight_rescaling_touches_only_boundary_blocks():
    # the two quadrature terms are stored separately, so reweighting must
    # reuse the interior block verbatim and recombine with the new weight
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    heavier = system.with_weight_exponent(4.0)
    assert heavier.interior_matrix is system.interior_matrix
    assert heavier.boundary_matrix is system.boundary_matrix
    assert heavier.weight == pytest.approx(
        system.h_fill ** -4.0, rel=1e-15)
    assert np.array_equal(
        heavier.matrix,
        system.interior_matrix + heavier.weight * system.boundary_matrix)
    # rescaling the fill distance scales the boundary term by (h/h')^3
    rescaled = replace(system, h_fill=system.h_fill / 2.0)
    assert rescaled.weight == pytest.approx(8.0 * system.weight, rel=1e-14)
    assert np.array_equal(
        rescaled.matrix,
        system.interior_matrix + rescaled.weight * system.boundary_matrix)


def test_matrix_only_system_has_no_rhs():
    system = assemble_matrix(SPEC, default_problem().operator, small_nodes(),
                             RULE_IN, RULE_BD)
    with pytest.raises(ValueError):
        system.rhs


def test_smoothness_guard_applies():
    rough = KernelSpec(tau=2.5, epsilon=10.0)
    with pytest.raises(ValueError):
        assemble_matrix(rough, default_problem().operator, small_nodes(),
                        RULE_IN, RULE_BD)


def test_chunked_streaming_is_exact():
    nodes = small_nodes()
    problem = default_problem()
    whole = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    chunked = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD,
                              chunk_elems=1000)
    # chunking reorders the accumulation, so entries agree to roundoff at
    # the scale of the matrix, not entrywise on tiny far-pair values
    gap = np.max(np.abs(whole.matrix - chunked.matrix))
    assert gap <= 1e-13 * np.max(np.abs(whole.matrix))
    rhs_gap = np.max(np.abs(whole.rhs - chunked.rhs))
    assert rhs_gap <= 1e-13 * np.max(np.abs(whole.rhs))


def test_dump_and_load_roundtrip(tmp_path):
    nodes = small_nodes()
    problem = default_problem()
    system = assemble_system(SPEC, problem, nodes, RULE_IN, RULE_BD)
    mpath = tmp_path / "a.txt"
    vpath = tmp_path / "b.txt"
    dump_matrix(mpath, system.matrix)
    dump_vector(vpath, system.rhs)
    assert np.array_equal(load_matrix(mpath), system.matrix)
    assert np.array_equal(load_vector(vpath), system.rhs)


def test_doubling_gap_reports_convergence():
    nodes = small_nodes()
    problem = default_problem()
    gap_coarse = matrix_doubling_gap(SPEC, problem.operator, nodes, DOMAIN,
                                     20, 40, 80)
    gap_fine = matrix_doubling_gap(SPEC, problem.operator, nodes, DOMAIN,
                                   40, 80, 160)
    assert gap_fine < gap_coarse


def test_accepted_resolution_budget_exhaustion():
    nodes = small_nodes()
    problem = default_problem()
    with pytest.raises(RuntimeError):
        accepted_resolution(SPEC, problem.operator, nodes, DOMAIN,
                            20, 40, 80, tol=1e-16, max_doublings=1)
