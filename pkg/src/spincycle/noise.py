"""RF-amplitude ensembles and the two propagation regimes.

A scale factor z multiplies the rotation angle of every carbon-channel rf
pulse.  In the static (incoherent) regime each ensemble member keeps its own
z for all iterations and the average is taken once, at measurement time; in
the stochastic (decoherent) regime the ensemble average is taken after every
iteration of the map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CircuitPlan, pulse_sequence_unitary, scaled_circuit_unitary
from .liouville import mix_channels, unitary_to_superop
from .spincore import SpinSystem


@dataclass(frozen=True)
class RfDistribution:
    """Discrete distribution of control-field scale factors."""

    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.points) != len(self.weights):
            raise ValueError("points and weights must have equal length")
        if len(self.points) == 0:
            raise ValueError("distribution must contain at least one point")
        if any(p <= 0 for p in self.points):
            raise ValueError("scale factors must be positive")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        total = sum(self.weights)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {total!r}")

    @property
    def mean(self) -> float:
        return float(np.dot(self.points, self.weights))

    @classmethod
    def single_point(cls, z: float = 1.0) -> "RfDistribution":
        return cls(points=(z,), weights=(1.0,))


def default_rf_distribution() -> RfDistribution:
    """The shipped nine-point carbon rf amplitude distribution.

    The values approximate a measured inhomogeneity profile: weights
    concentrated near the nominal amplitude with a tail toward low power.
    They are a calibration fixture, not measured ground truth, and are fully
    overridable from configuration.
    """
    return RfDistribution(
        points=(0.89, 0.91, 0.93, 0.955, 0.98, 1.0, 1.02, 1.04, 1.06),
        weights=(0.03, 0.05, 0.08, 0.12, 0.17, 0.22, 0.18, 0.11, 0.04),
    )


def perturbed_iteration_superop(plan: CircuitPlan, sys: SpinSystem, z: float,
                                relaxation: np.ndarray | None = None,
                                pulse_sequence=None) -> np.ndarray:
    """Superoperator of one entangler iteration at carbon field scale z.

    Gate-level by default; pass a compiled entangler PulseSequence to
    simulate at the pulse level instead.  When given, the relaxation
    superoperator for the iteration duration is composed after the coherent
    step.
    """
    if z <= 0:
        raise ValueError("field scale must be positive")
    if pulse_sequence is not None:
        u = pulse_sequence_unitary(pulse_sequence, sys, z)
    else:
        u = scaled_circuit_unitary(plan.entangler, sys.n_qubits, z)
    s = unitary_to_superop(u)
    if relaxation is not None:
        s = relaxation @ s
    return s


def member_superops(plan: CircuitPlan, sys: SpinSystem, dist: RfDistribution,
                    relaxation: np.ndarray | None = None,
                    pulse_sequence=None) -> list[np.ndarray]:
    """One iteration superoperator per ensemble member."""
    return [perturbed_iteration_superop(plan, sys, z, relaxation, pulse_sequence)
            for z in dist.points]


def incoherent_evolve(rho0: np.ndarray, plan: CircuitPlan, sys: SpinSystem,
                      dist: RfDistribution, n: int,
                      relaxation: np.ndarray | None = None,
                      return_members: bool = False):
    """Static-noise propagation: each member evolves n iterations at its own
    fixed z; the weighted average is taken once at the end.

    With return_members=True the per-member final states are returned along
    with the average.
    """
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    rho0 = np.asarray(rho0, dtype=complex).ravel()
    members = []
    for s in member_superops(plan, sys, dist, relaxation):
        v = rho0.copy()
        for _ in range(n):
            v = s @ v
        members.append(v)
    avg = sum(w * v for w, v in zip(dist.weights, members))
    if return_members:
        return avg, members
    return avg


def decoherent_evolve(rho0: np.ndarray, plan: CircuitPlan, sys: SpinSystem,
                      dist: RfDistribution, n: int,
                      relaxation: np.ndarray | None = None) -> np.ndarray:
    """Stochastic-noise propagation: the ensemble average is taken once per
    iteration (zero correlation time)."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    rho0 = np.asarray(rho0, dtype=complex).ravel()
    mixed = mix_channels(member_superops(plan, sys, dist, relaxation),
                         list(dist.weights))
    v = rho0.copy()
    for _ in range(n):
        v = mixed @ v
    return v
