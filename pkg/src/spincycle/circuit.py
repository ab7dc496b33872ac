"""The GHZ / iterated-entangler / disentangling-readout circuit.

The entangling map is G = CNOT(2->3) . H(2), identity on qubit 1.  Its
superoperator is 8-cyclic: G^8 equals the identity exactly, while
G^4 = X on qubit 3.  Because G^4 flips qubit 3, the disentangling readout
stage is the same gate list for both parities of the half-cycle count; only
the ideal target state alternates between |000> and |001>.

Every gate also carries a fixed decomposition into rotation pulses, virtual
z-rotations, and scalar-coupling evolution.  RF-amplitude noise is defined
at the decomposition level: carbon-channel x/y pulses have their rotation
angle multiplied by a scale factor z, virtual z-rotations and coupling
delays do not scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import expm

from .spincore import (
    HADAMARD,
    SIGMA,
    SpinSystem,
    internal_hamiltonian,
    pair_coupling_operator,
    propagator,
    rotation,
    single_qubit_op,
)

CARBON_QUBITS = frozenset({2, 3})
CYCLE_LENGTH = 8


@dataclass(frozen=True)
class Gate:
    """A gate from the supported set; qubit indices are 1-based."""

    kind: str  # 'h', 'cnot', 'rx', 'ry', 'rz', 'delay'
    qubits: tuple[int, ...] = ()
    angle: float = 0.0  # rotation angle (rad), or duration (s) for 'delay'

    def __post_init__(self):
        if self.kind not in ("h", "cnot", "rx", "ry", "rz", "delay"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cnot":
            if len(self.qubits) != 2:
                raise ValueError("cnot takes exactly (control, target)")
            if self.qubits[0] == self.qubits[1]:
                raise ValueError("cnot control and target must differ")
        elif self.kind == "delay":
            if self.angle < 0:
                raise ValueError("delay duration must be non-negative")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind} takes exactly one qubit")
        if any(q < 1 for q in self.qubits):
            raise ValueError("qubit indices are 1-based")

    @classmethod
    def hadamard(cls, q: int) -> "Gate":
        return cls("h", (q,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls("cnot", (control, target))

    @classmethod
    def rot(cls, axis: str, q: int, angle: float) -> "Gate":
        return cls("r" + axis.lower(), (q,), angle)

    @classmethod
    def delay(cls, duration: float) -> "Gate":
        return cls("delay", (), duration)

    def describe(self) -> str:
        if self.kind == "h":
            return f"H(q{self.qubits[0]})"
        if self.kind == "cnot":
            return f"CNOT(q{self.qubits[0]}->q{self.qubits[1]})"
        if self.kind == "delay":
            return f"Delay({self.angle:g} s)"
        return f"Rot{self.kind[1].upper()}(q{self.qubits[0]}, {self.angle:g})"


def gate_unitary(g: Gate, sys: SpinSystem) -> np.ndarray:
    """Exact unitary of a gate on the full Hilbert space."""
    n = sys.n_qubits
    for q in g.qubits:
        if q > n:
            raise ValueError(f"qubit index {q} out of range for {n}-qubit system")
    if g.kind == "h":
        return single_qubit_op(HADAMARD, g.qubits[0], n)
    if g.kind == "cnot":
        c, t = g.qubits
        p0 = single_qubit_op(np.diag([1.0, 0.0]).astype(complex), c, n)
        p1 = single_qubit_op(np.diag([0.0, 1.0]).astype(complex), c, n)
        return p0 + p1 @ single_qubit_op(SIGMA["X"], t, n)
    if g.kind == "delay":
        return propagator(internal_hamiltonian(sys), g.angle)
    return single_qubit_op(rotation(g.kind[1], g.angle), g.qubits[0], n)


def circuit_unitary(gates: list[Gate], sys: SpinSystem) -> np.ndarray:
    u = np.eye(sys.dim, dtype=complex)
    for g in gates:
        u = gate_unitary(g, sys) @ u
    return u


# --- circuit stages ---------------------------------------------------------

def ghz_prep() -> list[Gate]:
    """Gates taking |000> to (|000> + |111>)/sqrt(2)."""
    return [Gate.hadamard(1), Gate.cnot(1, 2), Gate.cnot(2, 3)]


def entangler_gates() -> list[Gate]:
    """One iteration of the two-qubit entangling map on qubits 2 and 3."""
    return [Gate.hadamard(2), Gate.cnot(2, 3)]


def readout_gates() -> list[Gate]:
    """Mirror of the preparation stage; maps the evolved entangled state to
    |000> (even half-cycle count) or |001> (odd)."""
    return [Gate.cnot(2, 3), Gate.cnot(1, 2), Gate.hadamard(1)]


@dataclass(frozen=True)
class CircuitPlan:
    prep: list[Gate] = field(default_factory=ghz_prep)
    entangler: list[Gate] = field(default_factory=entangler_gates)
    readout_even: list[Gate] = field(default_factory=readout_gates)
    readout_odd: list[Gate] = field(default_factory=readout_gates)
    n_c: int = CYCLE_LENGTH

    def __post_init__(self):
        for g in self.entangler:
            if any(q not in (2, 3) for q in g.qubits):
                raise ValueError("entangler gates must act only on qubits 2 and 3")
        if self.n_c != CYCLE_LENGTH:
            raise ValueError(f"cycle length must be {CYCLE_LENGTH}")

    def readout(self, n: int) -> list[Gate]:
        return self.readout_odd if n % 2 else self.readout_even

    def target_index(self, n: int) -> int:
        """Computational index of the ideal output state after n half cycles."""
        return 1 if n % 2 else 0

    def describe(self) -> str:
        lines = ["prep:"]
        lines += [f"  {g.describe()}" for g in self.prep]
        lines.append("entangler (one iteration, repeated 4n times):")
        lines += [f"  {g.describe()}" for g in self.entangler]
        lines.append("readout (both parities):")
        lines += [f"  {g.describe()}" for g in self.readout_even]
        lines.append(f"cycle length: {self.n_c}")
        return "\n".join(lines)


def entangling_map(sys: SpinSystem) -> np.ndarray:
    """Exact unitary of one entangler iteration."""
    return circuit_unitary(entangler_gates(), sys)


def full_circuit(n: int, plan: CircuitPlan | None = None) -> list[Gate]:
    """Prep, 4n entangler iterations, then the parity-matched readout."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    plan = plan or CircuitPlan()
    return list(plan.prep) + 4 * n * list(plan.entangler) + list(plan.readout(n))


# --- pulse decomposition ----------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """One element of a gate decomposition.

    kinds: 'pulse' (hard rf rotation about x or y), 'virtual_z' (frame
    change, never noisy), 'coupling' (scalar-coupling evolution through a
    given angle per Pauli term of the isotropic pair coupling), 'delay'
    (evolution under the full internal Hamiltonian for a duration), 'idle'
    (bookkeeping time with no coherent evolution).
    """

    kind: str
    qubit: int = 0
    axis: str = "x"
    angle: float = 0.0
    pair: tuple[int, int] = (0, 0)
    duration: float = 0.0

    @property
    def channel(self) -> str:
        return "carbon" if self.qubit in CARBON_QUBITS else "hydrogen"


def _pulse(q: int, axis: str, angle: float) -> Segment:
    return Segment("pulse", qubit=q, axis=axis, angle=angle)


def decompose_gate(g: Gate) -> list[Segment]:
    """Fixed rotation decomposition defining which angles carry rf noise.

    Hadamard: a single y pulse plus a virtual z rotation.  CNOT(c->t): a y
    basis-change sandwich on the control around a spin echo that converts
    the isotropic pair coupling into a pure XX interaction (two coupling
    halves with a refocusing pi pulse on the target), followed by the local
    pi/2 corrections.
    """
    if g.kind == "h":
        q = g.qubits[0]
        return [_pulse(q, "y", -np.pi / 2), Segment("virtual_z", qubit=q, angle=np.pi)]
    if g.kind == "cnot":
        c, t = g.qubits
        half = Segment("coupling", pair=(c, t), angle=np.pi / 8)
        return [
            _pulse(c, "y", -np.pi / 2),
            half,
            _pulse(t, "x", np.pi),
            half,
            _pulse(t, "x", np.pi),
            _pulse(c, "y", np.pi / 2),
            _pulse(t, "x", np.pi / 2),
            Segment("virtual_z", qubit=c, angle=np.pi / 2),
        ]
    if g.kind in ("rx", "ry"):
        return [_pulse(g.qubits[0], g.kind[1], g.angle)]
    if g.kind == "rz":
        return [Segment("virtual_z", qubit=g.qubits[0], angle=g.angle)]
    if g.kind == "delay":
        return [Segment("delay", duration=g.angle)]
    raise ValueError(f"gate kind {g.kind!r} has no decomposition")


def segment_unitary(seg: Segment, n_qubits: int, z: float = 1.0,
                    sys: SpinSystem | None = None) -> np.ndarray:
    """Unitary of one segment with carbon pulse angles scaled by z.

    'coupling' segments evolve the idealized isotropic pair coupling;
    'delay' segments require a SpinSystem and evolve its full internal
    Hamiltonian.
    """
    dim = 2 ** n_qubits
    if seg.kind == "pulse":
        scale = z if seg.qubit in CARBON_QUBITS else 1.0
        return single_qubit_op(rotation(seg.axis, seg.angle * scale), seg.qubit, n_qubits)
    if seg.kind == "virtual_z":
        return single_qubit_op(rotation("z", seg.angle), seg.qubit, n_qubits)
    if seg.kind == "coupling":
        op = pair_coupling_operator(seg.pair[0], seg.pair[1], n_qubits)
        return expm(-1j * seg.angle * op)
    if seg.kind == "delay":
        if sys is None:
            raise ValueError("delay segments require a spin system")
        return propagator(internal_hamiltonian(sys), seg.duration)
    if seg.kind == "idle":
        return np.eye(dim, dtype=complex)
    raise ValueError(f"unknown segment kind {seg.kind!r}")


def scaled_circuit_unitary(gates: list[Gate], n_qubits: int, z: float) -> np.ndarray:
    """Gate-level unitary of a gate list with carbon pulses scaled by z.

    At z = 1 this equals the ideal circuit unitary up to a global phase.
    """
    u = np.eye(2 ** n_qubits, dtype=complex)
    for g in gates:
        for seg in decompose_gate(g):
            u = segment_unitary(seg, n_qubits, z) @ u
    return u


# --- pulse-level compilation ------------------------------------------------

@dataclass(frozen=True)
class PulseParams:
    """Hard-pulse timing parameters.

    pad_to, when set, appends an idle segment so the whole compiled
    sequence reaches the given total duration (seconds).
    """

    nutation_hz: float = 17500.0
    offset_compensation: bool = True
    pad_to: float | None = None


@dataclass(frozen=True)
class PulseSequence:
    segments: tuple[Segment, ...]

    @property
    def duration(self) -> float:
        return sum(s.duration for s in self.segments)


def compile_to_pulses(gates: list[Gate], sys: SpinSystem,
                      params: PulseParams | None = None) -> PulseSequence:
    """Compile a gate list to hard pulses and coupling delays.

    Coupling segments become delays of 1/(4 J) per half under the full
    internal Hamiltonian, with virtual-z compensation of the known offset
    precession of the non-refocused spins.  The compilation is exact at
    z = 1 only for idealized parameters (single coupled pair, zero
    offsets); with realistic offsets and spectator couplings it is a hard
    pulse approximation of the experiment.
    """
    params = params or PulseParams()
    out: list[Segment] = []
    for g in gates:
        for seg in decompose_gate(g):
            if seg.kind == "pulse":
                dur = abs(seg.angle) / (2 * np.pi * params.nutation_hz)
                out.append(replace(seg, duration=dur))
            elif seg.kind == "coupling":
                j, k = seg.pair
                jjk = sys.coupling(j, k)
                if jjk == 0.0:
                    raise ValueError(
                        f"cannot compile coupling between qubits {j} and {k}: J is zero")
                # angle per Pauli term theta needs t = 2*theta/(pi*J)
                t = 2 * seg.angle / (np.pi * abs(jjk))
                out.append(Segment("delay", pair=(j, k), duration=t))
                if params.offset_compensation:
                    for q in range(1, sys.n_qubits + 1):
                        if q == k:
                            continue  # refocused by the echo pulse on the target
                        nu = sys.frequencies[q - 1]
                        if nu != 0.0:
                            out.append(Segment("virtual_z", qubit=q,
                                               angle=-2 * np.pi * nu * t))
            else:
                out.append(seg)
    total = sum(s.duration for s in out)
    if params.pad_to is not None:
        if params.pad_to < total - 1e-12:
            raise ValueError(
                f"cannot pad to {params.pad_to} s: sequence already lasts {total:.6g} s")
        out.append(Segment("idle", duration=params.pad_to - total))
    return PulseSequence(segments=tuple(out))


def pulse_sequence_unitary(seq: PulseSequence, sys: SpinSystem, z: float = 1.0) -> np.ndarray:
    """Unitary of a compiled sequence; carbon pulse angles scale with z,
    delays evolve the full internal Hamiltonian."""
    u = np.eye(sys.dim, dtype=complex)
    for seg in seq.segments:
        u = segment_unitary(seg, sys.n_qubits, z, sys=sys) @ u
    return u
