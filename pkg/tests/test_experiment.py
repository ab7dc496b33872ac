import numpy as np
import pytest

from spincycle.config import ExperimentConfig
from spincycle.experiment import (
    COMPONENT_NAMES,
    ITERATIONS_PER_SAMPLE,
    compare_models,
    component_coefficients,
    ideal_component_sign,
    run_decay,
    spectrum,
)
from spincycle.liouville import vectorize
from spincycle.noise import RfDistribution
from spincycle.spincore import pauli_product


def basis_state(idx):
    rho = np.zeros((8, 8), dtype=complex)
    rho[idx, idx] = 1.0
    return rho


def quiet_config(**kw):
    """Default config with relaxation off unless overridden."""
    kw.setdefault("relaxation", False)
    return ExperimentConfig(**kw)


class TestComponents:
    def test_ground_state_coefficients(self):
        c = component_coefficients(vectorize(basis_state(0)))
        assert np.allclose(c, [0.125, 0.125, 0.125, 0.125])

    def test_flipped_third_qubit(self):
        c = component_coefficients(vectorize(basis_state(1)))
        assert np.allclose(c, [0.125, 0.125, -0.125, -0.125])

    def test_matches_pauli_traces(self):
        rng = np.random.default_rng(6)
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        c = component_coefficients(vectorize(rho))
        for val, label in zip(c, ("ZII", "ZZI", "ZIZ", "ZZZ")):
            assert val == pytest.approx(np.trace(pauli_product(label) @ rho).real / 8)

    def test_wrong_size_rejected(self):
        with pytest.raises(ValueError, match="3-qubit"):
            component_coefficients(np.zeros(16))

    def test_ideal_signs(self):
        assert ideal_component_sign("z1", 3) == 1.0
        assert ideal_component_sign("z1z2", 5) == 1.0
        assert ideal_component_sign("z1z3", 1) == -1.0
        assert ideal_component_sign("z1z2z3", 2) == 1.0


class TestRunDecay:
    def test_noiseless_fidelity_is_one(self):
        config = quiet_config(distribution=RfDistribution.single_point(1.0), n_max=10)
        for model in ("incoherent", "decoherent"):
            series = run_decay(model, config)
            assert np.max(np.abs(series.fidelity - 1.0)) < 1e-10
            assert np.max(np.abs(series.purity - 1.0)) < 1e-10

    def test_noiseless_components_match_target_signs(self):
        config = quiet_config(distribution=RfDistribution.single_point(1.0), n_max=6)
        series = run_decay("incoherent", config)
        for i, n in enumerate(series.n):
            for j, name in enumerate(COMPONENT_NAMES):
                expected = 0.125 * ideal_component_sign(name, int(n))
                assert series.components[i, j] == pytest.approx(expected, abs=1e-10)

    def test_models_agree_at_n0(self):
        config = quiet_config(n_max=2)
        inc = run_decay("incoherent", config)
        dec = run_decay("decoherent", config)
        assert inc.fidelity[0] == pytest.approx(dec.fidelity[0], abs=1e-12)

    def test_sample_spans_four_iterations(self):
        assert ITERATIONS_PER_SAMPLE == 4

    def test_unknown_model_rejected(self):
        with pytest.raises(ValueError, match="unknown model"):
            run_decay("markovian", quiet_config())

    def test_relaxation_lowers_fidelity(self):
        base = quiet_config(distribution=RfDistribution.single_point(1.0), n_max=5)
        relax = ExperimentConfig(distribution=RfDistribution.single_point(1.0),
                                 relaxation=True, n_max=5)
        f_ideal = run_decay("decoherent", base).fidelity[-1]
        f_relax = run_decay("decoherent", relax).fidelity[-1]
        assert f_relax < f_ideal - 0.01

    def test_pulse_mode_runs(self):
        config = quiet_config(mode="pulse", n_max=2)
        series = run_decay("decoherent", config)
        assert len(series.n) == 3
        assert np.all(np.isfinite(series.fidelity))

    def test_series_shapes(self):
        series = run_decay("incoherent", quiet_config(n_max=8))
        assert series.n.shape == (9,)
        assert series.components.shape == (9, 4)
        assert np.allclose(series.sum_abs, np.abs(series.components).sum(axis=1))


class TestSpectrum:
    def test_noiseless_energy_at_zero_frequency(self):
        config = quiet_config(distribution=RfDistribution.single_point(1.0), n_max=30)
        series = run_decay("incoherent", config)
        for name in COMPONENT_NAMES:
            spec = spectrum(series, name)
            assert spec.frequencies[0] == 0.0
            assert spec.frequencies[-1] == pytest.approx(1.0 / 8.0)
            assert np.max(spec.magnitudes[1:]) < 1e-9 * spec.magnitudes[0]

    def test_alternating_series_maps_to_nyquist(self):
        from spincycle.experiment import DecaySeries

        n = np.arange(31)
        comps = np.zeros((31, 4))
        comps[:, 3] = 0.125 * (-1.0) ** n  # raw alternation beyond the ideal signs
        series = DecaySeries(model="incoherent", n=n, fidelity=np.ones(31),
                             components=comps, sum_abs=np.abs(comps).sum(axis=1),
                             purity=np.ones(31))
        spec = spectrum(series, "z1z2z3")
        # ideal signs for z1z2z3 already alternate, so this series aligns to
        # a constant and the energy sits in the zero bin...
        assert np.argmax(spec.magnitudes) == 0
        # ...while a series that is constant in raw terms aligns to
        # alternating and lands on the Nyquist bin.
        comps[:, 3] = 0.125
        series2 = DecaySeries(model="incoherent", n=n, fidelity=np.ones(31),
                              components=comps, sum_abs=np.abs(comps).sum(axis=1),
                              purity=np.ones(31))
        spec2 = spectrum(series2, "z1z2z3")
        assert np.argmax(spec2.magnitudes) == len(spec2.magnitudes) - 1
        assert spec2.nyquist_magnitude == spec2.magnitudes[-1]

    def test_unknown_component_rejected(self):
        series = run_decay("incoherent", quiet_config(n_max=8))
        with pytest.raises(ValueError, match="unknown component"):
            spectrum(series, "z2z3")

    def test_short_series_rejected(self):
        series = run_decay("incoherent", quiet_config(n_max=5))
        with pytest.raises(ValueError, match="too short"):
            spectrum(series, "z1")


class TestCompareModels:
    def test_report_structure(self):
        report = compare_models(quiet_config(n_max=10))
        assert set(report.recurrence_count) == {"incoherent", "decoherent"}
        assert set(report.nyquist_ratio) == set(COMPONENT_NAMES)
        assert len(report.spectra) == 8
        assert not report.models_identical

    def test_single_point_models_identical(self):
        config = quiet_config(distribution=RfDistribution.single_point(0.97), n_max=10)
        report = compare_models(config)
        assert report.models_identical
        assert "coincide" in report.summary_lines()[0]

    def test_summary_lines_cover_all_stats(self):
        report = compare_models(quiet_config(n_max=10))
        text = "\n".join(report.summary_lines())
        for key in ("recurrence count", "saturation", "nyquist-bin ratio"):
            assert key in text
