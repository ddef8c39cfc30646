"""Tests for cst/apps.py: static friction and the qubit fidelity defect."""
import math

import numpy as np
import pytest

from cst.apps import (
    QubitPair,
    bloch_angle,
    bloch_vector,
    cell_midpoints,
    fidelity_defect,
    fidelity_defect_search,
    friction_objective,
    friction_solve,
    friction_solve_lp,
    friction_torque,
    parse_qubit,
    qubit_state,
    random_feasible_profiles,
    random_qubit_pair,
)
from cst.kernel import DomainError, ValidationError

F_STAR = math.sqrt(2) - 1
S_STAR = 1 / math.sqrt(2)


class TestFriction:
    def test_reference_optimum(self):
        solution = friction_solve(10_000)
        assert abs(solution.max_force - F_STAR) < 1e-3
        assert abs(solution.switch_point - S_STAR) < 1e-3
        assert abs(solution.torque) < 1e-12

    def test_bang_bang_profile(self):
        solution = friction_solve(1_000)
        x = cell_midpoints(1_000)
        assert np.all(solution.profile[x < S_STAR - 0.01] == 1.0)
        assert np.all(solution.profile[x > S_STAR + 0.01] == -1.0)
        assert np.all(np.abs(solution.profile) <= 1.0)

    def test_never_exceeds_continuum_optimum(self):
        for cells in (10, 100, 1_000, 10_000):
            assert friction_solve(cells).max_force <= F_STAR + 1e-12

    def test_monotone_under_refinement(self):
        forces = [friction_solve(cells).max_force for cells in (10, 100, 1_000, 10_000)]
        assert forces == sorted(forces)

    def test_error_shrinks_like_one_over_n(self):
        errors = {n: F_STAR - friction_solve(n).max_force for n in (100, 1_000, 10_000)}
        constants = [n * e for n, e in errors.items()]
        assert max(constants) < 1.0

    def test_random_feasible_profiles_do_not_beat_optimum(self):
        best = friction_solve(10_000).max_force
        profiles = random_feasible_profiles(10_000, 500, seed=3)
        assert np.all(np.abs(profiles) <= 1.0 + 1e-12)
        for profile in profiles:
            assert abs(friction_torque(profile)) < 1e-9
            assert friction_objective(profile) <= best + 1e-9

    def test_highs_agrees(self):
        structural = friction_solve(200)
        lp = friction_solve_lp(200)
        assert abs(structural.max_force - lp.max_force) < 1e-6

    def test_too_few_cells(self):
        with pytest.raises(DomainError):
            friction_solve(5)
        with pytest.raises(DomainError):
            friction_solve_lp(5)


class TestQubits:
    def test_orthogonal_basis(self):
        q = QubitPair(np.array([1, 0]), np.array([0, 1]))
        assert fidelity_defect(q) == pytest.approx(1.0)

    def test_hadamard_overlap(self):
        q = QubitPair(np.array([1, 0]), np.array([1, 1]) / math.sqrt(2))
        assert fidelity_defect(q) == pytest.approx(1 / math.sqrt(2), abs=1e-9)

    def test_same_state_up_to_phase(self):
        psi = qubit_state(0.7, 1.3)
        q = QubitPair(psi, np.exp(0.4j) * psi)
        assert fidelity_defect_search(q) == 0.0
        assert fidelity_defect(q) == pytest.approx(0.0, abs=1e-7)

    def test_symmetric_and_phase_invariant(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            q = random_qubit_pair(rng)
            swapped = QubitPair(q.psi2, q.psi1)
            phased = QubitPair(np.exp(2.1j) * q.psi1, q.psi2)
            assert fidelity_defect(swapped) == pytest.approx(fidelity_defect(q))
            assert fidelity_defect(phased) == pytest.approx(fidelity_defect(q))

    def test_search_matches_direct(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            q = random_qubit_pair(rng)
            direct = fidelity_defect(q)
            found = fidelity_defect_search(q, grid_steps=100)
            assert abs(found - direct) < 1e-2
            assert found <= direct + 1e-9

    def test_bloch_angle_gives_half_angle_sine(self):
        for alpha in (0.3, 1.0, 2.5):
            q = QubitPair(qubit_state(0.0, 0.0), qubit_state(alpha, 0.8))
            assert bloch_angle(q) == pytest.approx(alpha)
            assert fidelity_defect_search(q, grid_steps=200) == pytest.approx(math.sin(alpha / 2), abs=1e-3)

    def test_bloch_vector_is_unit(self):
        b = bloch_vector(qubit_state(1.1, 2.2))
        assert np.linalg.norm(b) == pytest.approx(1.0)

    def test_norm_validated(self):
        with pytest.raises(ValidationError) as exc:
            QubitPair(np.array([1, 1]), np.array([1, 0]))
        assert exc.value.invariant == "qubit-norm"

    def test_shape_validated(self):
        with pytest.raises(ValidationError):
            QubitPair(np.array([1, 0, 0]), np.array([1, 0]))

    def test_grid_minimum(self):
        q = QubitPair(np.array([1, 0]), np.array([0, 1]))
        with pytest.raises(DomainError):
            fidelity_defect_search(q, grid_steps=10)

    def test_parse_qubit(self):
        psi = parse_qubit("0.6+0i, 0+0.8i")
        assert psi[0] == pytest.approx(0.6)
        assert psi[1] == pytest.approx(0.8j)

    def test_parse_qubit_errors(self):
        with pytest.raises(ValidationError):
            parse_qubit("1")
        with pytest.raises(ValidationError):
            parse_qubit("a,b")
