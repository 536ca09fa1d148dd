import numpy as np
import pytest

from graphhodge import (
    DEFAULT_TIMES,
    NeumannData,
    PreconditionError,
    SolvabilityError,
    cycle_graph,
    derivation,
    gamma_h,
    harmonic_basis,
    path_graph,
    solve_ns_boundary,
    solve_ns_free,
    verify_weak_solution,
)
from graphhodge.graph import energy_measure
from oracles import kirchhoff_current


def test_default_time_grid():
    assert len(DEFAULT_TIMES) == 10
    assert DEFAULT_TIMES[0] == 0.0 and DEFAULT_TIMES[-1] == 9.0


def test_zero_solution(c4):
    sol = solve_ns_free(c4, np.zeros(4), 1.0)
    np.testing.assert_array_equal(sol.velocity, 0.0)
    np.testing.assert_array_equal(sol.pressure, 0.0)
    report = verify_weak_solution(c4, sol)
    assert report.passed and report.max_residual == 0.0


def test_c4_unit_cycle(c4):
    for nu in (0.0, 0.1, 1.0, 10.0):
        sol = solve_ns_free(c4, np.ones(4), nu)
        np.testing.assert_array_equal(sol.velocity, np.ones(4))
        np.testing.assert_array_equal(sol.pressure, np.full(4, -0.5))
        assert sol.velocity_at(3.5) is sol.velocity


def test_negative_time_rejected(c4):
    sol = solve_ns_free(c4, np.ones(4), 1.0)
    with pytest.raises(PreconditionError):
        sol.velocity_at(-1.0)


def test_tree_admits_only_zero(binary_tree):
    rng = np.random.default_rng(50)
    assert harmonic_basis(binary_tree) == []
    solve_ns_free(binary_tree, np.zeros(binary_tree.n_edges), 1.0)
    for _ in range(10):
        with pytest.raises(PreconditionError, match="inadmissible"):
            solve_ns_free(binary_tree, rng.standard_normal(binary_tree.n_edges), 1.0)


def test_negative_viscosity_rejected(c4):
    with pytest.raises(PreconditionError):
        solve_ns_free(c4, np.ones(4), -1.0)


def test_perturbed_velocity_is_flagged(c4):
    sol = solve_ns_free(c4, np.ones(4), 1.0)
    bad = type(sol)(sol.velocity + 1e-3 * derivation(c4, [1.0, 0.0, 0.0, 0.0]), sol.pressure, 1.0)
    report = verify_weak_solution(c4, bad)
    assert report.max_constraint_residual > 1e-4
    assert not report.passed


def test_non_divergence_free_test_forms_are_flagged(c4):
    sol = solve_ns_free(c4, np.ones(4), 1.0)
    report = verify_weak_solution(c4, sol, [derivation(c4, [1.0, 0.0, 0.0, 0.0])])
    assert not report.admissible_tests
    assert not report.passed


def test_free_solutions_verify(corpus):
    rng = np.random.default_rng(51)
    for g in corpus.values():
        basis = harmonic_basis(g)
        u0 = sum((rng.standard_normal() * b for b in basis), np.zeros(g.n_edges))
        sol = solve_ns_free(g, u0, 1.0)
        report = verify_weak_solution(g, sol)
        assert report.max_residual < 1e-12
        assert report.passed
        np.testing.assert_array_equal(sol.pressure, -0.5 * gamma_h(g, u0))


def test_boundary_path():
    g = path_graph(3)
    sol = solve_ns_boundary(g, NeumannData((0, 2), [-1.0, 1.0]), 1.0)
    np.testing.assert_allclose(sol.velocity, [1.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(sol.pressure, -0.5 * energy_measure(g, sol.potential))
    report = verify_weak_solution(g, sol)
    assert report.passed


def test_boundary_zero_fluxes(c4):
    sol = solve_ns_boundary(c4, NeumannData((0, 2), [0.0, 0.0]), 1.0)
    np.testing.assert_allclose(sol.velocity, 0.0, atol=1e-15)


def test_boundary_c4_kirchhoff():
    g = cycle_graph(4).with_conductance([1.0, 3.0, 2.0, 0.5])
    sol = solve_ns_boundary(g, NeumannData((0, 2), [-1.0, 1.0]), 1.0)
    # unit current enters at 2 and leaves at 0; velocity = -current / conductance
    current = kirchhoff_current(g, source=2, sink=0)
    np.testing.assert_allclose(sol.velocity, -current / g.conductance, atol=1e-12)
    # arcs 0-1-2 and 2-3-0 carry current in proportion to their series conductances
    arc_a = 1 / (1 / 1.0 + 1 / 3.0)
    arc_b = 1 / (1 / 2.0 + 1 / 0.5)
    assert abs(current[0]) == pytest.approx(arc_a / (arc_a + arc_b))
    report = verify_weak_solution(g, sol)
    assert report.max_constraint_residual < 1e-12
    assert report.passed


def test_boundary_unsolvable(c4):
    with pytest.raises(SolvabilityError):
        solve_ns_boundary(c4, NeumannData((0, 2), [1.0, 1.0]), 1.0)


def test_viscosity_independence(corpus):
    for g in corpus.values():
        basis = harmonic_basis(g)
        u0 = sum(basis, np.zeros(g.n_edges))
        sols = [solve_ns_free(g, u0, nu) for nu in (0.1, 1.0, 10.0)]
        for s in sols[1:]:
            assert np.array_equal(s.velocity, sols[0].velocity)
            assert np.array_equal(s.pressure, sols[0].pressure)


def test_uniqueness_repeat_runs(corpus):
    g = corpus["ladder_weighted"]
    u0 = harmonic_basis(g)[0]
    assert solve_ns_free(g, u0, 1.0) == solve_ns_free(g, u0, 1.0)
