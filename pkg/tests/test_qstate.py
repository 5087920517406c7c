import numpy as np
import pytest

from scramblemeter import (
    DimensionMismatchError,
    Povm,
    SiteLayout,
    SubsystemSpec,
    ValidationError,
    adjoint_effect,
    apply_channel,
    choi_matrix,
    embed_effect,
    operator_norm,
    partial_trace,
    tensor,
    validate_isometry,
)
from scramblemeter.qstate import check_density, haar_state, random_unitary

from conftest import I2, X, Z, bell_encoder, random_density, random_hermitian


class TestTensor:
    def test_identity(self):
        assert np.allclose(tensor(I2, I2), np.eye(4))

    def test_diagonal(self):
        out = tensor(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
        assert np.allclose(out, np.diag([3.0, 4.0, 6.0, 8.0]))

    def test_mixed_product(self):
        # (X (x) I)(I (x) X) = X (x) X, checked by direct 4x4 multiplication
        lhs = tensor(X, I2) @ tensor(I2, X)
        assert np.allclose(lhs, tensor(X, X), atol=1e-12)


class TestPartialTrace:
    def test_bell_reduction(self):
        phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        rho = np.outer(phi, phi.conj())
        red = partial_trace(rho, SiteLayout((2, 2)), SubsystemSpec((0,)))
        assert np.allclose(red, I2 / 2, atol=1e-12)

    def test_product_state(self, rng):
        rho = random_density(2, rng)
        sigma = random_density(3, rng)
        red = partial_trace(tensor(rho, sigma), SiteLayout((2, 3)), SubsystemSpec((0,)))
        assert np.allclose(red, rho, atol=1e-12)

    def test_against_index_contraction(self, rng):
        # brute-force oracle: contract the traced index pair explicitly
        m = random_hermitian(8, rng)
        t = m.reshape(2, 2, 2, 2, 2, 2)
        oracle = np.zeros((4, 4), dtype=complex)
        for a in range(2):
            for c in range(2):
                for ap in range(2):
                    for cp in range(2):
                        oracle[2 * a + c, 2 * ap + cp] = sum(
                            t[a, b, c, ap, b, cp] for b in range(2)
                        )
        got = partial_trace(m, SiteLayout((2, 2, 2)), SubsystemSpec((0, 2)))
        assert np.allclose(got, oracle, atol=1e-12)

    def test_trace_preserved(self, rng):
        m = random_hermitian(8, rng)
        red = partial_trace(m, SiteLayout((2, 2, 2)), SubsystemSpec((1,)))
        assert abs(np.trace(red) - np.trace(m)) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace(np.eye(4), SiteLayout((2, 2, 2)), SubsystemSpec((0,)))


class TestEmbedEffect:
    def test_identity(self):
        out = embed_effect(np.eye(2), SiteLayout((2, 2)), SubsystemSpec((1,)))
        assert np.allclose(out, np.eye(4), atol=1e-12)

    def test_contiguous(self):
        out = embed_effect(Z, SiteLayout((2, 2)), SubsystemSpec((1,)))
        assert np.allclose(out, tensor(I2, Z), atol=1e-12)

    def test_noncontiguous_against_permutation(self):
        # oracle: conjugate X (x) X (x) I by the explicit swap of legs 1 and 2
        layout = SiteLayout((2, 2, 2))
        got = embed_effect(tensor(X, X), layout, SubsystemSpec((0, 2)))
        swap = np.zeros((8, 8))
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    swap[4 * a + 2 * c + b, 4 * a + 2 * b + c] = 1
        oracle = swap @ tensor(X, X, I2) @ swap.T
        assert np.allclose(got, oracle, atol=1e-12)

    def test_disjoint_embeddings_commute(self, rng):
        layout = SiteLayout((2, 2, 2))
        mu = random_hermitian(2, rng)
        nu = random_hermitian(4, rng)
        a = embed_effect(mu, layout, SubsystemSpec((1,)))
        b = embed_effect(nu, layout, SubsystemSpec((0, 2)))
        assert np.max(np.abs(a @ b - b @ a)) < 1e-12


class TestChannel:
    def test_identity_channel(self, rng):
        v = validate_isometry(np.eye(2), SiteLayout((2,)))
        rho = random_density(2, rng)
        assert np.allclose(apply_channel(v, SubsystemSpec((0,)), rho), rho)

    def test_replacement_by_construction(self, rng):
        from conftest import replacement_isometry

        v = replacement_isometry()
        rho = random_density(2, rng)
        out = apply_channel(v, SubsystemSpec((1,)), rho)
        assert np.allclose(out, np.diag([1.0, 0.0]), atol=1e-12)

    def test_bell_encoder_plus_state(self):
        v = bell_encoder()
        plus = np.full((2, 2), 0.5, dtype=complex)
        out = apply_channel(v, SubsystemSpec((0,)), plus)
        # hand partial trace of the 2-qubit pure state gives |+><+|
        assert np.allclose(out, plus, atol=1e-12)

    def test_adjoint_unitality(self):
        v = bell_encoder()
        out = adjoint_effect(v, SubsystemSpec((0,)), np.eye(2))
        assert np.allclose(out, np.eye(2), atol=1e-12)

    def test_bell_adjoint_closed_form(self, rng):
        v = bell_encoder()
        mu = random_hermitian(2, rng)
        got = adjoint_effect(v, SubsystemSpec((0,)), mu)
        expected = (np.trace(mu) / 2) * I2 + np.real(mu[0, 1]) * X
        assert np.allclose(got, expected, atol=1e-12)

    def test_povm_completeness_pullback(self, rng):
        v = bell_encoder()
        psi = haar_state(2, rng)
        p = np.outer(psi, psi.conj())
        effects = [p, np.eye(2) - p]
        total = sum(adjoint_effect(v, SubsystemSpec((0,)), e) for e in effects)
        assert np.allclose(total, np.eye(2), atol=1e-12)

    def test_adjoint_is_true_adjoint(self, rng):
        v = bell_encoder()
        c = SubsystemSpec((1,))
        for _ in range(10):
            rho = random_density(2, rng)
            mu = random_hermitian(2, rng)
            lhs = np.trace(mu @ apply_channel(v, c, rho))
            rhs = np.trace(adjoint_effect(v, c, mu) @ rho)
            assert abs(lhs - rhs) < 1e-10

    def test_choi_cptp(self, rng):
        for _ in range(5):
            g = rng.normal(size=(8, 2)) + 1j * rng.normal(size=(8, 2))
            q, _ = np.linalg.qr(g)
            v = validate_isometry(q, SiteLayout((2, 2, 2)))
            c = SubsystemSpec((0, 2))
            choi = choi_matrix(v, c)
            assert np.min(np.linalg.eigvalsh((choi + choi.conj().T) / 2)) > -1e-8
            red = partial_trace(choi, SiteLayout((2, 4)), SubsystemSpec((0,)))
            assert np.allclose(red, np.eye(2), atol=1e-8)


class TestOperatorNorm:
    def test_identity(self):
        assert operator_norm(np.eye(5)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert operator_norm(np.diag([0.2, 0.8])) == pytest.approx(0.8)

    def test_against_power_iteration(self, rng):
        m = random_hermitian(8, rng)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        for _ in range(5000):
            v = m @ (m @ v)
            v = v / np.linalg.norm(v)
        oracle = np.linalg.norm(m @ v)
        assert abs(operator_norm(m) - oracle) < 1e-10

    def test_density_norm_in_unit_interval(self, rng):
        rho = random_density(8, rng)
        red = partial_trace(rho, SiteLayout((2, 4)), SubsystemSpec((1,)))
        n = operator_norm(red)
        assert 0 < n <= 1 + 1e-12


class TestValidation:
    def test_identity_isometry(self):
        v = validate_isometry(np.eye(2), SiteLayout((2,)))
        assert v.in_dim == 2

    def test_single_column(self):
        col = np.array([[1], [1]]) / np.sqrt(2)
        v = validate_isometry(col, SiteLayout((2,)))
        assert v.in_dim == 1

    def test_duplicate_columns_rejected(self):
        mat = np.array([[1, 1], [0, 0]], dtype=complex)
        with pytest.raises(ValidationError):
            validate_isometry(mat, SiteLayout((2,)))

    def test_density_validation(self, rng):
        check_density(random_density(3, rng))
        with pytest.raises(ValidationError):
            check_density(np.diag([0.6, 0.6]))
        with pytest.raises(ValidationError):
            check_density(np.diag([1.5, -0.5]))

    def test_povm_validation(self):
        Povm(effects=[I2 / 2, I2 / 2]).validate()
        with pytest.raises(ValidationError):
            Povm(effects=[I2, I2]).validate()

    def test_unitary_is_unitary(self, rng):
        u = random_unitary(4, rng)
        assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)
