import numpy as np
import pytest

from nhvqe.ansatz import Gate
from nhvqe.errors import DimensionError, ResourceError
from nhvqe.model import build_tim
from nhvqe.pauli import PauliSum
from nhvqe.statevector import (
    NOISELESS,
    NoiseConfig,
    StateVector,
    apply_gate,
    apply_pauli_sum,
    derive_seed,
    expectation,
    expectation_batch,
    new_zero_state,
)

from conftest import dense_sum, random_pauli_sum, random_state


class TestNewZeroState:
    def test_single_qubit(self):
        s = new_zero_state(1)
        np.testing.assert_array_equal(s.amplitudes, [1.0, 0.0])

    def test_three_qubits(self):
        s = new_zero_state(3)
        assert s.amplitudes.shape == (8,)
        assert s.amplitudes[0] == 1.0
        assert np.count_nonzero(s.amplitudes) == 1

    def test_norm_one(self):
        assert new_zero_state(4).norm() == pytest.approx(1.0, abs=1e-12)

    def test_limit(self):
        with pytest.raises(ResourceError):
            new_zero_state(15)
        with pytest.raises(ValueError):
            new_zero_state(0)


class TestApplyGate:
    def test_ry_pi_flips(self):
        s = apply_gate(new_zero_state(1), Gate("ry", 0), np.pi)
        np.testing.assert_allclose(s.amplitudes, [0.0, 1.0], atol=1e-12)

    def test_rz_phases_zero_state(self):
        theta = 0.731
        s = apply_gate(new_zero_state(1), Gate("rz", 0), theta)
        np.testing.assert_allclose(s.amplitudes[0], np.exp(-1j * theta / 2), atol=1e-12)

    def test_rx_convention(self):
        # exp(-i theta X / 2)|0> = cos(theta/2)|0> - i sin(theta/2)|1>
        theta = 1.234
        s = apply_gate(new_zero_state(1), Gate("rx", 0), theta)
        np.testing.assert_allclose(
            s.amplitudes, [np.cos(theta / 2), -1j * np.sin(theta / 2)], atol=1e-12
        )

    def test_cnot_flips_target_when_control_set(self):
        # basis index 1 = |01> (bit 0 set); control 0, target 1 -> index 3
        s = apply_gate(new_zero_state(2), Gate("ry", 0), np.pi)
        s = apply_gate(s, Gate("cnot", target=1, control=0))
        assert np.argmax(np.abs(s.amplitudes)) == 3

    def test_cnot_is_noop_when_control_clear(self):
        s = apply_gate(new_zero_state(2), Gate("cnot", target=1, control=0))
        np.testing.assert_array_equal(s.amplitudes, new_zero_state(2).amplitudes)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            apply_gate(new_zero_state(2), Gate("ry", 5), 0.3)

    def test_missing_angle(self):
        with pytest.raises(ValueError):
            apply_gate(new_zero_state(1), Gate("ry", 0))

    def test_norm_preserved_over_random_circuits(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            state = new_zero_state(n)
            for _ in range(20):
                if n > 1 and rng.uniform() < 0.3:
                    q = int(rng.integers(0, n))
                    t = int((q + 1 + rng.integers(0, n - 1)) % n)
                    state = apply_gate(state, Gate("cnot", target=t, control=q))
                else:
                    kind = str(rng.choice(["rx", "ry", "rz"]))
                    state = apply_gate(
                        state, Gate(kind, int(rng.integers(0, n))), float(rng.uniform(-np.pi, np.pi))
                    )
            assert abs(state.norm() - 1.0) <= 1e-12


class TestApplyPauliSum:
    def test_x_flips(self):
        out = apply_pauli_sum(new_zero_state(1), PauliSum([(1.0, "X")], 1))
        np.testing.assert_allclose(out, [0.0, 1.0], atol=1e-12)

    def test_eigenvector_annihilation(self):
        s = PauliSum([(1.0, "Z"), (-1.0, "I")], 1)
        out = apply_pauli_sum(new_zero_state(1), s)
        np.testing.assert_allclose(out, [0.0, 0.0], atol=1e-12)

    def test_tim_on_basis_state(self):
        h = build_tim(3, 0.0)
        out = apply_pauli_sum(new_zero_state(3), h)
        oracle = dense_sum(h) @ new_zero_state(3).amplitudes
        np.testing.assert_allclose(out, oracle, atol=1e-12)
        assert out[0] == pytest.approx(-3.0)

    def test_linearity(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 4))
            a = random_pauli_sum(rng, n)
            b = random_pauli_sum(rng, n)
            state = StateVector(random_state(rng, n))
            lhs = apply_pauli_sum(state, a) + apply_pauli_sum(state, b)
            rhs = apply_pauli_sum(state, a + b)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            apply_pauli_sum(new_zero_state(2), PauliSum([(1.0, "X")], 1))


class TestExpectation:
    def test_z_on_zero(self):
        assert expectation(new_zero_state(1), PauliSum([(1.0, "Z")], 1)) == pytest.approx(1.0)

    def test_x_on_plus(self):
        plus = apply_gate(new_zero_state(1), Gate("ry", 0), np.pi / 2)
        val = expectation(plus, PauliSum([(1.0, "X")], 1))
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_matches_dense_quadratic_form(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 5))
            s = random_pauli_sum(rng, n)
            vec = random_state(rng, n)
            val = expectation(StateVector(vec), s)
            oracle = np.vdot(vec, dense_sum(s) @ vec)
            assert abs(val - oracle) <= 1e-10

    def test_hermitian_sum_gives_real_value(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 4))
            a = random_pauli_sum(rng, n)
            herm = a + a.adjoint()
            vec = random_state(rng, n)
            assert abs(expectation(StateVector(vec), herm).imag) <= 1e-12

    def test_unnormalized_state_rejected(self):
        with pytest.raises(ValueError):
            StateVector(np.array([1.0, 1.0]))
        good = np.array([1.0, 1.0]) / np.sqrt(2)
        bad = good[None, :] * 2
        with pytest.raises(ValueError):
            expectation_batch(bad, PauliSum.identity(1))


class TestNoise:
    def test_epsilon_zero_is_exact(self):
        s = PauliSum([(1.0, "Z")], 1)
        a = expectation(new_zero_state(1), s, NoiseConfig(0.0, 1))
        b = expectation(new_zero_state(1), s, NOISELESS)
        assert a == b == 1.0

    def test_noisy_z_within_band_and_deterministic(self):
        s = PauliSum([(1.0, "Z")], 1)
        noise1 = NoiseConfig(0.04, seed=7)
        noise2 = NoiseConfig(0.04, seed=7)
        v1 = expectation(new_zero_state(1), s, noise1)
        v2 = expectation(new_zero_state(1), s, noise2)
        assert v1 == v2
        assert 0.96 <= v1.real <= 1.04
        assert v1.real != 1.0

    def test_deviation_bounded_by_scale(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 4))
            s = random_pauli_sum(rng, n)
            vec = random_state(rng, n)
            state = StateVector(vec)
            eps = float(rng.uniform(0.01, 0.2))
            noisy = expectation(state, s, NoiseConfig(eps, int(rng.integers(1 << 30))))
            exact = expectation(state, s)
            assert abs(noisy - exact) <= eps * s.spectral_scale + 1e-12

    def test_mean_deviation_unbiased(self):
        # 10^4 draws: the sample mean must sit within 3 standard errors of 0
        s = PauliSum([(1.0, "Z")], 1)
        state = new_zero_state(1)
        eps = 0.04
        noise = NoiseConfig(eps, seed=42)
        draws = np.array([expectation(state, s, noise).real - 1.0 for _ in range(10_000)])
        stderr = eps / np.sqrt(3) / np.sqrt(draws.size)
        assert abs(draws.mean()) <= 3 * stderr

    def test_spawned_streams_differ(self):
        base = NoiseConfig(0.1, seed=3)
        a, b = base.spawn(0), base.spawn(1)
        assert a.seed != b.seed
        assert a.epsilon == b.epsilon == 0.1

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            NoiseConfig(-0.1, 0)

    def test_derive_seed_stable(self):
        assert derive_seed(0, 1) == derive_seed(0, 1)
        assert derive_seed(0, 1) != derive_seed(0, 2)
        assert derive_seed(1, 0) != derive_seed(0, 1)
