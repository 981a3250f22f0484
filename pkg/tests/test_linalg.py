import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reciprocal_channels import channels as ch
from reciprocal_channels.errors import DimensionError, InvalidDistributionError, InvalidStateError
from reciprocal_channels.linalg import (
    bloch_to_density,
    check_density_matrix,
    density_to_bloch,
    haar_random_pure,
    haar_random_pure_batch,
    haar_random_unitary,
    haar_random_unitary_batch,
    ket_to_dm,
    partial_trace,
    random_density_matrix,
    shannon_entropy,
    tensor,
    trace_norm,
    von_neumann_entropy,
)

# -sum p log2 p for (1/4, 3/8, 3/8), evaluated with mpmath at 30 digits
H_QUARTER_3_8THS = 1.56127812445913286390969579204


def random_states(d):
    return st.integers(0, 2**32 - 1).map(lambda s: random_density_matrix(d, s))


class TestEntropy:
    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(3) / 3) == pytest.approx(math.log2(3), abs=1e-12)

    def test_pure_state_is_zero(self, rng):
        psi = haar_random_pure(4, rng)
        assert von_neumann_entropy(ket_to_dm(psi)) == pytest.approx(0.0, abs=1e-10)

    def test_diagonal_matches_shannon(self):
        rho = np.diag([0.25, 0.375, 0.375])
        assert von_neumann_entropy(rho) == pytest.approx(H_QUARTER_3_8THS, abs=1e-14)
        assert shannon_entropy([0.25, 0.375, 0.375]) == pytest.approx(H_QUARTER_3_8THS, abs=1e-14)

    def test_shannon_trivial_cases(self):
        assert shannon_entropy([1, 0, 0]) == 0.0
        assert shannon_entropy(np.full(4, 0.25)) == pytest.approx(2.0, abs=1e-15)

    def test_non_hermitian_rejected(self):
        with pytest.raises(InvalidStateError):
            von_neumann_entropy(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(InvalidStateError):
            von_neumann_entropy(np.diag([1.1, -0.1]))

    def test_tiny_negative_eigenvalue_is_noise(self):
        assert von_neumann_entropy(np.diag([1 + 5e-11, -5e-11])) == pytest.approx(0.0, abs=1e-9)

    def test_invalid_distribution(self):
        with pytest.raises(InvalidDistributionError):
            shannon_entropy([1.2, -0.2])
        with pytest.raises(InvalidDistributionError):
            shannon_entropy([0.5, 0.4])

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 6).flatmap(random_states))
    def test_entropy_bounds(self, rho):
        s = von_neumann_entropy(rho)
        assert -1e-12 <= s <= math.log2(rho.shape[0]) + 1e-12


class TestTraceNorm:
    def test_identity(self):
        assert trace_norm(np.eye(3)) == pytest.approx(3.0)

    def test_orthogonal_pure_states(self):
        assert trace_norm(np.diag([1, 0]) - np.diag([0, 1])) == pytest.approx(2.0)

    def test_signed_diagonal(self):
        assert trace_norm(np.diag([0.5, -0.5])) == pytest.approx(1.0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(-5, 5))
    def test_norm_axioms(self, seed, scale):
        g = np.random.default_rng(seed)
        a, b = (g.standard_normal((3, 3)) + 1j * g.standard_normal((3, 3)) for _ in range(2))
        assert trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-9
        assert trace_norm(scale * a) == pytest.approx(abs(scale) * trace_norm(a), abs=1e-9)


class TestTensorAndPartialTrace:
    def test_identities(self):
        assert np.allclose(tensor(np.eye(2), np.eye(2)), np.eye(4))
        assert np.allclose(tensor(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))

    def test_mixed_product(self, rng):
        a, b, c, e = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
        assert np.allclose(tensor(a, b) @ tensor(c, e), tensor(a @ c, b @ e), atol=1e-12)

    def test_trace_out_product(self, rng):
        ra, rb = random_density_matrix(2, rng), random_density_matrix(3, rng)
        joint = tensor(ra, rb)
        assert np.allclose(partial_trace(joint, 2, 3, keep="A"), ra, atol=1e-12)
        assert np.allclose(partial_trace(joint, 2, 3, keep="B"), rb, atol=1e-12)

    def test_maximally_entangled_marginal(self):
        omega = ch.omega_projector(2)
        assert np.allclose(partial_trace(omega, 2, 2, keep="B"), np.eye(2) / 2)

    def test_trace_preserved(self, rng):
        x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        for keep in "AB":
            assert np.trace(partial_trace(x, 2, 3, keep=keep)) == pytest.approx(np.trace(x))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            partial_trace(np.eye(5), 2, 3)


class TestHaar:
    def test_pure_state_normalized_and_deterministic(self):
        for seed in range(5):
            psi = haar_random_pure(5, seed)
            assert abs(np.linalg.norm(psi) - 1) < 1e-12
            assert np.array_equal(psi, haar_random_pure(5, seed))

    def test_pure_state_mean_is_maximally_mixed(self):
        d, n = 3, 100_000
        psis = haar_random_pure_batch(d, n, 11)
        outer = psis[:, :, None] * psis.conj()[:, None, :]
        mean = outer.mean(axis=0)
        sigma = outer.std(axis=0) / np.sqrt(n)
        assert np.all(np.abs(mean - np.eye(d) / d) <= 3 * sigma + 1e-15)

    def test_unitary_properties(self):
        for seed in range(5):
            u = haar_random_unitary(4, seed)
            assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-10)
            assert abs(abs(np.linalg.det(u)) - 1) < 1e-10

    def test_unitary_twirl_of_operator(self):
        d, n = 2, 100_000
        x = np.array([[0.3, 0.2 - 0.1j], [0.5j, -0.7]])
        us = haar_random_unitary_batch(d, n, 5)
        samples = us @ x @ us.conj().transpose(0, 2, 1)
        mean = samples.mean(axis=0)
        sigma = np.abs(samples - mean).std(axis=0) / np.sqrt(n) + samples.std(axis=0) / np.sqrt(n)
        assert np.all(np.abs(mean - np.trace(x) * np.eye(d) / d) <= 3 * sigma)

    def test_small_dimension_rejected(self):
        with pytest.raises(DimensionError):
            haar_random_pure(1, 0)
        with pytest.raises(DimensionError):
            haar_random_unitary(1, 0)


class TestBloch:
    def test_centre_and_pole(self):
        assert np.allclose(bloch_to_density([0, 0, 0]), np.eye(2) / 2)
        assert np.allclose(bloch_to_density([0, 0, 1]), np.diag([1, 0]))

    def test_round_trip(self, rng):
        for _ in range(20):
            r = rng.standard_normal(3)
            r *= rng.uniform() / np.linalg.norm(r)
            assert np.allclose(density_to_bloch(bloch_to_density(r)), r, atol=1e-12)

    def test_too_long_rejected(self):
        with pytest.raises(InvalidStateError):
            bloch_to_density([0, 0, 1.01])

    def test_qubit_dc_scales_bloch_vector(self, rng):
        for lam in (-1 / 3, -0.1, 0.4, 1.0):
            dc = ch.depolarizing_channel(2, lam)
            r = rng.standard_normal(3)
            r *= rng.uniform() / np.linalg.norm(r)
            assert np.allclose(density_to_bloch(dc(bloch_to_density(r))), lam * r, atol=1e-12)


def test_density_matrix_validation():
    assert check_density_matrix(np.eye(2) / 2).dtype == complex
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.eye(2))
