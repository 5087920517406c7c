import numpy as np
import pytest

from scramblemeter import (
    Ensemble,
    Povm,
    ValidationError,
    h_min,
    h_min_cond,
    max_ratio_over_ensembles,
    p_guess,
    r_guess,
    robustness,
    verify_duality,
)
from scramblemeter.engine import sic_povm_qubit

from conftest import I2, ket, random_density


def uniform(states):
    n = len(states)
    return Ensemble(items=[(1.0 / n, s) for s in states])


BASIS_POVM = Povm(effects=[np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])


class TestEnsemble:
    def test_rejects_bad_priors(self, rng):
        with pytest.raises(ValidationError):
            Ensemble(items=[(0.7, random_density(2, rng))] * 2).validated()

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            Ensemble(items=[]).validated()

    def test_rejects_mixed_dims(self, rng):
        items = [(0.5, random_density(2, rng)), (0.5, random_density(3, rng))]
        with pytest.raises(ValidationError):
            Ensemble(items=items).validated()


class TestGuessing:
    def test_orthogonal_pair(self):
        e = uniform([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
        assert p_guess(e, BASIS_POVM) == pytest.approx(1.0, abs=1e-12)
        assert r_guess(e, BASIS_POVM) == pytest.approx(2.0, abs=1e-12)

    def test_hand_computed(self):
        # p_guess = 0.8 * 0.9 + 0.2 * 0.6 = 0.84 by direct arithmetic
        e = Ensemble(items=[(0.8, np.diag([0.9, 0.1])), (0.2, np.diag([0.4, 0.6]))])
        assert p_guess(e, BASIS_POVM) == pytest.approx(0.84, abs=1e-12)
        assert r_guess(e, BASIS_POVM) == pytest.approx(0.84 / 0.8, abs=1e-12)

    def test_skewed_prior_immunity(self):
        # always-guess-the-mode: p_guess large but r_guess stays at 1
        e = Ensemble(items=[(0.99, I2 / 2), (0.01, I2 / 2)])
        m = Povm(effects=[I2, np.zeros((2, 2))])
        assert p_guess(e, m) == pytest.approx(0.99, abs=1e-12)
        assert r_guess(e, m) == pytest.approx(1.0, abs=1e-12)

    def test_effect_count_mismatch(self):
        e = uniform([I2 / 2] * 3)
        with pytest.raises(ValidationError):
            p_guess(e, BASIS_POVM)


class TestRobustness:
    def test_trivial_povm_is_free(self):
        m = Povm(effects=[I2 / 3] * 3)
        assert robustness(m) == pytest.approx(0.0, abs=1e-12)

    def test_projective_qubit(self):
        assert robustness(BASIS_POVM) == pytest.approx(1.0, abs=1e-12)

    def test_sic_qubit(self):
        # each tetrahedron effect has norm 1/2, so R = 4/2 - 1 = 1
        m = Povm(effects=sic_povm_qubit())
        assert robustness(m) == pytest.approx(1.0, abs=1e-12)

    def test_closed_form_attained_by_eigenvector_ensemble(self, rng):
        # oracle: uniform priors on the top eigenvectors achieve R + 1 exactly
        for _ in range(5):
            a = random_density(2, rng) * 0.7
            m = Povm(effects=[a, I2 - a])
            states = []
            for mu in m.effects:
                _, u = np.linalg.eigh(mu)
                v = u[:, -1]
                states.append(np.outer(v, v.conj()))
            e = uniform(states)
            assert r_guess(e, m) == pytest.approx(
                max_ratio_over_ensembles(m), abs=1e-12
            )

    def test_ensemble_ratio_never_exceeds_closed_form(self, rng):
        a = random_density(2, rng) * 0.5
        m = Povm(effects=[a, I2 - a])
        bound = max_ratio_over_ensembles(m)
        for _ in range(50):
            states = [random_density(2, rng), random_density(2, rng)]
            assert r_guess(uniform(states), m) <= bound + 1e-12


class TestHmin:
    def test_pure_state(self):
        psi = ket(0)
        assert h_min(np.outer(psi, psi)) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert h_min(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)


class TestHminCond:
    def test_orthogonal_letters(self):
        e = uniform([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
        bits, gap = h_min_cond(e)
        assert bits == pytest.approx(0.0, abs=1e-7)
        assert gap < 1e-6

    def test_identical_letters(self):
        e = uniform([I2 / 2] * 4)
        bits, _ = h_min_cond(e)
        assert bits == pytest.approx(2.0, abs=1e-7)

    def test_dominated_by_largest_prior(self, rng):
        e = Ensemble(items=[(0.9, random_density(2, rng)), (0.1, random_density(2, rng))])
        bits, _ = h_min_cond(e)
        # 2^-H >= max_x p_x always (guess the mode, ignore the state)
        assert 2.0 ** (-bits) >= 0.9 - 1e-8

    def test_duality_random(self, rng):
        for _ in range(5):
            e = uniform([random_density(3, rng) for _ in range(3)])
            rep = verify_duality(e)
            assert rep["passed"], rep

    def test_duality_skewed_priors(self, rng):
        e = Ensemble(items=[(0.5, random_density(2, rng)),
                            (0.3, random_density(2, rng)),
                            (0.2, random_density(2, rng))])
        rep = verify_duality(e)
        assert rep["difference"] <= 1e-6
