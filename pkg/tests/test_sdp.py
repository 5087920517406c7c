import numpy as np
import pytest

from scramblemeter import (
    SdpProblem,
    ValidationError,
    jrf_iterate,
    solve_discrimination,
    solve_sdp,
)
from scramblemeter.qstate import random_unitary
from scramblemeter.sdp import helstrom_value

from conftest import I2, random_density

KET0 = np.array([1, 0], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
HELSTROM_PAIR = [np.outer(KET0, KET0), np.outer(KET_PLUS, KET_PLUS)]
HELSTROM_OPT = (1 + 1 / np.sqrt(2)) / 2


class TestSolveSdp:
    def test_rank_one_forced(self):
        e11 = np.diag([1.0, 0.0])
        p = SdpProblem(objective=np.eye(2), constraints=[(e11, 1.0)])
        sol = solve_sdp(p)
        assert sol.status == "optimal"
        assert sol.primal_value == pytest.approx(1.0, abs=1e-7)
        assert np.allclose(sol.primal_matrix, e11, atol=1e-6)

    def test_min_eigenvalue(self):
        p = SdpProblem(objective=np.diag([1.0, 2.0]), constraints=[(np.eye(2), 1.0)])
        sol = solve_sdp(p)
        assert sol.primal_value == pytest.approx(1.0, abs=1e-7)

    def test_weak_duality(self):
        p = SdpProblem(objective=np.diag([1.0, 2.0]), constraints=[(np.eye(2), 1.0)])
        sol = solve_sdp(p)
        assert sol.dual_value <= sol.primal_value + 1e-9

    def test_rejects_non_hermitian(self):
        bad = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(ValidationError):
            solve_sdp(SdpProblem(objective=bad, constraints=[]))

    def test_infeasible(self):
        # Tr X = -1 with X >= 0 is impossible
        p = SdpProblem(objective=np.eye(2), constraints=[(np.eye(2), -1.0)])
        sol = solve_sdp(p)
        assert sol.status == "infeasible"

    def test_matches_bloch_grid_discrimination(self, rng):
        # independent oracle: exhaustive projective measurements on the sphere
        rho0, rho1 = random_density(2, rng), random_density(2, rng)
        best = 0.0
        for th in np.linspace(0, np.pi, 80):
            for ph in np.linspace(0, 2 * np.pi, 160):
                psi = np.array(
                    [np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)]
                )
                p0 = np.outer(psi, psi.conj())
                val = 0.5 * np.real(np.trace(p0 @ rho0) + np.trace((I2 - p0) @ rho1))
                best = max(best, val)
        _, p_guess = solve_discrimination([rho0, rho1], [0.5, 0.5])
        assert p_guess == pytest.approx(best, abs=1e-4)


class TestDiscrimination:
    def test_orthogonal_states(self):
        states = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
        m, p_guess = solve_discrimination(states, [0.5, 0.5])
        assert p_guess == pytest.approx(1.0, abs=1e-7)
        m.validate()

    def test_identical_states(self):
        rho = np.eye(2) / 2
        _, p_guess = solve_discrimination([rho] * 3, [1 / 3] * 3)
        assert p_guess == pytest.approx(1 / 3, abs=1e-7)

    def test_helstrom_pair(self):
        _, p_guess = solve_discrimination(HELSTROM_PAIR, [0.5, 0.5])
        assert p_guess == pytest.approx(HELSTROM_OPT, abs=1e-7)
        assert HELSTROM_OPT == pytest.approx(
            helstrom_value(*HELSTROM_PAIR), abs=1e-12
        )

    def test_guessing_most_likely_letter_bound(self, rng):
        states = [random_density(3, rng) for _ in range(3)]
        priors = [0.6, 0.3, 0.1]
        _, p_guess = solve_discrimination(states, priors)
        assert p_guess >= 0.6 - 1e-8

    def test_unitary_invariance(self, rng):
        states = [random_density(2, rng) for _ in range(3)]
        priors = [0.2, 0.5, 0.3]
        _, p1 = solve_discrimination(states, priors)
        u = random_unitary(2, rng)
        _, p2 = solve_discrimination([u @ s @ u.conj().T for s in states], priors)
        assert p1 == pytest.approx(p2, abs=1e-8)

    def test_degenerate_prior(self):
        states = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), np.eye(2) / 2]
        _, p_guess = solve_discrimination(states, [0.5, 0.5, 0.0])
        assert p_guess == pytest.approx(1.0, abs=1e-7)

    def test_prior_validation(self):
        with pytest.raises(ValidationError):
            solve_discrimination([np.eye(2) / 2] * 2, [0.7, 0.7])


class TestJrfIterate:
    def test_orthogonal_converges(self):
        states = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
        _, lower, upper = jrf_iterate(states, [0.5, 0.5], iters=50)
        assert lower == pytest.approx(1.0, abs=1e-10)

    def test_helstrom_bracket(self):
        m, lower, upper = jrf_iterate(HELSTROM_PAIR, [0.5, 0.5], iters=200)
        assert lower <= HELSTROM_OPT + 1e-9
        assert upper >= HELSTROM_OPT - 1e-9
        assert upper - lower < 1e-6
        m.validate()

    def test_brackets_sdp_value(self, rng):
        states = [random_density(2, rng) for _ in range(3)]
        priors = [1 / 3] * 3
        _, p_sdp = solve_discrimination(states, priors)
        _, lower, upper = jrf_iterate(states, priors, iters=300)
        assert lower <= p_sdp + 1e-6
        assert upper >= p_sdp - 1e-6

    def test_lower_bound_monotone(self, rng):
        states = [random_density(2, rng) for _ in range(2)]
        priors = [0.5, 0.5]
        prev = 0.0
        for iters in (1, 5, 20, 80):
            _, lower, _ = jrf_iterate(states, priors, iters=iters)
            assert lower >= prev - 1e-12
            prev = lower

    def test_rejects_zero_iters(self):
        with pytest.raises(ValidationError):
            jrf_iterate([np.eye(2) / 2] * 2, [0.5, 0.5], iters=0)
