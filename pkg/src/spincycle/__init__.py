"""Simulation of fidelity decay under a cyclic entangling map, separating
static (incoherent) from stochastic (decoherent) rf-amplitude noise on a
three-qubit NMR-style processor."""

from .circuit import (
    CircuitPlan,
    Gate,
    PulseParams,
    PulseSequence,
    compile_to_pulses,
    entangling_map,
    full_circuit,
    gate_unitary,
    ghz_prep,
    readout_gates,
)
from .config import ExperimentConfig, load_config
from .experiment import (
    DecaySeries,
    Spectrum,
    compare_models,
    component_coefficients,
    run_decay,
    spectrum,
)
from .liouville import (
    RelaxationRates,
    devectorize,
    fidelity,
    mix_channels,
    purity,
    relaxation_superop,
    unitary_to_superop,
    vectorize,
)
from .noise import (
    RfDistribution,
    decoherent_evolve,
    default_rf_distribution,
    incoherent_evolve,
    perturbed_iteration_superop,
)
from .spincore import (
    SpinSystem,
    default_spin_system,
    internal_hamiltonian,
    pauli_product,
    propagator,
)

__version__ = "0.1.0"
