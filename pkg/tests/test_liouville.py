import numpy as np
import pytest
from scipy.stats import unitary_group

from spincycle.liouville import (
    RelaxationRates,
    devectorize,
    fidelity,
    mix_channels,
    purity,
    relaxation_superop,
    unitary_to_superop,
    vectorize,
)
from spincycle.spincore import SIGMA, SpinSystem, default_spin_system


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


class TestVectorization:
    def test_ground_state(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        assert np.allclose(vectorize(rho), [1, 0, 0, 0])

    def test_maximally_mixed(self):
        assert np.allclose(vectorize(np.eye(2) / 2), [0.5, 0, 0, 0.5])

    def test_round_trip(self):
        rng = np.random.default_rng(0)
        rho = random_density(rng, 8)
        assert np.array_equal(devectorize(vectorize(rho)), rho)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="square"):
            vectorize(np.zeros((2, 3)))

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError, match="power of two"):
            vectorize(np.zeros((3, 3)))


class TestUnitarySuperop:
    def test_identity(self):
        assert np.allclose(unitary_to_superop(np.eye(4)), np.eye(16))

    def test_bit_flip(self):
        s = unitary_to_superop(SIGMA["X"])
        out = devectorize(s @ vectorize(np.diag([1.0, 0.0])))
        assert np.allclose(out, np.diag([0.0, 1.0]))

    def test_conjugation_oracle(self):
        rng = np.random.default_rng(3)
        u = unitary_group.rvs(8, random_state=5)
        rho = random_density(rng, 8)
        via_superop = devectorize(unitary_to_superop(u) @ vectorize(rho))
        assert np.linalg.norm(via_superop - u @ rho @ u.conj().T) < 1e-12

    def test_homomorphism(self):
        u = unitary_group.rvs(8, random_state=1)
        v = unitary_group.rvs(8, random_state=2)
        lhs = unitary_to_superop(u @ v)
        rhs = unitary_to_superop(u) @ unitary_to_superop(v)
        assert np.linalg.norm(lhs - rhs) < 1e-10

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError, match="not unitary"):
            unitary_to_superop(np.diag([1.0, 2.0]))


class TestMixChannels:
    def test_single_channel(self):
        s = unitary_to_superop(SIGMA["X"])
        assert np.array_equal(mix_channels([s], [1.0]), s)

    def test_equal_mixture_dephasing(self):
        sx = unitary_to_superop(SIGMA["X"])
        out = devectorize(mix_channels([np.eye(4), sx], [0.5, 0.5]) @
                          vectorize(np.diag([1.0, 0.0])))
        assert np.allclose(out, np.eye(2) / 2)

    def test_trace_preserving_mixture(self):
        rng = np.random.default_rng(9)
        channels = [unitary_to_superop(unitary_group.rvs(8, random_state=k))
                    for k in range(9)]
        w = rng.random(9)
        w /= w.sum()
        mixed = mix_channels(channels, list(w))
        for _ in range(20):
            rho = random_density(rng, 8)
            out = devectorize(mixed @ vectorize(rho))
            assert abs(np.trace(out) - 1.0) < 1e-10

    def test_bad_weight_sum_rejected(self):
        with pytest.raises(ValueError, match="sum to 1"):
            mix_channels([np.eye(4), np.eye(4)], [0.5, 0.4])

    def test_unital_and_purity_decay(self):
        channels = [unitary_to_superop(unitary_group.rvs(8, random_state=k))
                    for k in range(4)]
        mixed = mix_channels(channels, [0.25] * 4)
        vmixed = vectorize(np.eye(8) / 8)
        assert np.linalg.norm(mixed @ vmixed - vmixed) < 1e-12
        rng = np.random.default_rng(12)
        v = vectorize(random_density(rng, 8))
        last = purity(v)
        for _ in range(30):
            v = mixed @ v
            p = purity(v)
            assert p <= last + 1e-12
            last = p


class TestRelaxation:
    def test_zero_rates_identity(self):
        rates = RelaxationRates(1, {"X": 0.0, "Y": 0.0, "Z": 0.0})
        assert np.allclose(relaxation_superop(rates, 1.0), np.eye(4), atol=1e-12)

    def test_single_qubit_transverse_decay(self):
        t1, t2 = 10.0, 3.0
        rates = RelaxationRates(1, {"X": 1 / t2, "Y": 1 / t2, "Z": 1 / t1})
        rho = (np.eye(2) + SIGMA["X"]) / 2
        t = 0.7
        out = devectorize(relaxation_superop(rates, t) @ vectorize(rho))
        x_coeff = np.trace(SIGMA["X"] @ out).real / 2
        assert abs(x_coeff - 0.5 * np.exp(-t / t2)) < 1e-12
        assert abs(np.trace(out) - 1.0) < 1e-12

    def test_semigroup(self):
        sys = default_spin_system()
        rates = RelaxationRates.from_spin_system(sys)
        lhs = relaxation_superop(rates, 0.2) @ relaxation_superop(rates, 0.5)
        assert np.linalg.norm(lhs - relaxation_superop(rates, 0.7)) < 1e-10

    def test_trace_preserved_on_random_states(self):
        sys = default_spin_system()
        r = relaxation_superop(RelaxationRates.from_spin_system(sys), 0.03)
        rng = np.random.default_rng(21)
        for _ in range(5):
            out = devectorize(r @ vectorize(random_density(rng, 8)))
            assert abs(np.trace(out) - 1.0) < 1e-10

    def test_negative_time_rejected(self):
        rates = RelaxationRates(1, {})
        with pytest.raises(ValueError, match="non-negative"):
            relaxation_superop(rates, -0.1)

    def test_identity_label_rate_must_vanish(self):
        with pytest.raises(ValueError, match="identity"):
            RelaxationRates(1, {"I": 0.5})

    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError, match="negative rate"):
            RelaxationRates(1, {"X": -1.0})


class TestFidelityPurity:
    def test_identical_pure_states(self):
        v = vectorize(np.diag([1.0, 0, 0, 0, 0, 0, 0, 0]))
        assert fidelity(v, v) == pytest.approx(1.0)

    def test_orthogonal_states(self):
        a = np.zeros((8, 8)); a[0, 0] = 1
        b = np.zeros((8, 8)); b[1, 1] = 1
        assert fidelity(vectorize(a), vectorize(b)) == pytest.approx(0.0)

    def test_pure_vs_maximally_mixed(self):
        a = np.zeros((8, 8)); a[0, 0] = 1
        assert fidelity(vectorize(a), vectorize(np.eye(8) / 8)) == pytest.approx(1 / 8)

    def test_symmetry(self):
        rng = np.random.default_rng(4)
        a = vectorize(random_density(rng, 8))
        b = vectorize(random_density(rng, 8))
        assert abs(fidelity(a, b) - fidelity(b, a)) < 1e-12

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="dimensions"):
            fidelity(np.zeros(4), np.zeros(16))

    def test_purity_values(self):
        pure = np.zeros((8, 8)); pure[0, 0] = 1
        assert purity(vectorize(pure)) == pytest.approx(1.0)
        assert purity(vectorize(np.eye(8) / 8)) == pytest.approx(1 / 8)
        half = np.zeros((8, 8)); half[0, 0] = 0.5; half[7, 7] = 0.5
        assert purity(vectorize(half)) == pytest.approx(0.5)
