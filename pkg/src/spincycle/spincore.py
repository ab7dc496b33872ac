"""Pauli-product operator algebra, spin systems, and unitary propagators.

Conventions used throughout the package:

* Qubit 1 is the most significant bit of the computational basis, so a
  three-qubit basis state reads ``|q1 q2 q3>``.
* Hamiltonians are stored in angular-frequency units (rad/s); all public
  configuration is in Hz and seconds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

HADAMARD = (SIGMA["Z"] + SIGMA["X"]) / np.sqrt(2)


@dataclass(frozen=True)
class SpinSystem:
    """A weakly-coupled spin-1/2 system.

    frequencies are rotating-frame resonance offsets in Hz, couplings is the
    symmetric scalar-coupling matrix in Hz with zero diagonal, t1/t2 are
    per-qubit relaxation times in seconds.
    """

    n_qubits: int
    frequencies: tuple[float, ...]
    couplings: tuple[tuple[float, ...], ...]
    t1: tuple[float, ...]
    t2: tuple[float, ...]

    def __post_init__(self):
        n = self.n_qubits
        if n < 1:
            raise ValueError("n_qubits must be a positive integer")
        object.__setattr__(self, "frequencies", tuple(float(v) for v in self.frequencies))
        object.__setattr__(self, "couplings",
                           tuple(tuple(float(x) for x in row) for row in self.couplings))
        object.__setattr__(self, "t1", tuple(float(v) for v in self.t1))
        object.__setattr__(self, "t2", tuple(float(v) for v in self.t2))
        if len(self.frequencies) != n:
            raise ValueError(f"frequencies must have length {n}, got {len(self.frequencies)}")
        if not all(np.isfinite(v) for v in self.frequencies):
            raise ValueError("frequencies must be finite")
        j = np.asarray(self.couplings, dtype=float)
        if j.shape != (n, n):
            raise ValueError(f"couplings must be a {n}x{n} matrix, got shape {j.shape}")
        if not np.allclose(j, j.T):
            raise ValueError("couplings must be symmetric")
        if np.any(np.diag(j) != 0.0):
            raise ValueError("couplings must have zero diagonal")
        for name, times in (("t1", self.t1), ("t2", self.t2)):
            if len(times) != n:
                raise ValueError(f"{name} must have length {n}")
            if any(t <= 0 for t in times):
                raise ValueError(f"all {name} values must be positive")
        if any(t2 > 2 * t1 + 1e-12 for t1, t2 in zip(self.t1, self.t2)):
            raise ValueError("t2 must not exceed 2*t1 for any qubit")

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def coupling(self, j: int, k: int) -> float:
        """Scalar coupling J_jk in Hz between 1-based qubits j and k."""
        return self.couplings[j - 1][k - 1]


def default_spin_system() -> SpinSystem:
    """The shipped three-spin system: one hydrogen and two carbons.

    Carbon offsets split the measured 1.201 kHz separation symmetrically
    about zero; the hydrogen offset is a recorded convention.  Relaxation
    times are the range endpoints, assigned hydrogen-slow / carbons-fast.
    """
    return SpinSystem(
        n_qubits=3,
        frequencies=(0.0, 600.5, -600.5),
        couplings=((0.0, 235.7, 42.9),
                   (235.7, 0.0, 132.6),
                   (42.9, 132.6, 0.0)),
        t1=(10.4, 3.0, 3.0),
        t2=(3.0, 1.5, 1.5),
    )


def pauli_product(label: str) -> np.ndarray:
    """Tensor product of single-qubit Pauli matrices, qubit 1 most significant.

    ``label`` is a string over {I, X, Y, Z}, one symbol per qubit.
    """
    if len(label) == 0:
        raise ValueError("label must contain at least one symbol")
    out = None
    for sym in label:
        if sym not in SIGMA:
            raise ValueError(f"invalid Pauli symbol {sym!r}; expected one of I, X, Y, Z")
        out = SIGMA[sym] if out is None else np.kron(out, SIGMA[sym])
    return out


def single_qubit_op(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Embed a 2x2 operator on the given 1-based qubit, identity elsewhere."""
    if not 1 <= qubit <= n_qubits:
        raise ValueError(f"qubit index {qubit} out of range 1..{n_qubits}")
    out = None
    for q in range(1, n_qubits + 1):
        factor = op if q == qubit else SIGMA["I"]
        out = factor if out is None else np.kron(out, factor)
    return out


def internal_hamiltonian(sys: SpinSystem) -> np.ndarray:
    """Zeeman offsets plus isotropic scalar couplings, in rad/s.

    H = sum_j pi*nu_j Z_j + sum_{j<k} (pi*J_jk/2)(X_jX_k + Y_jY_k + Z_jZ_k)
    """
    n = sys.n_qubits
    h = np.zeros((sys.dim, sys.dim), dtype=complex)
    for j in range(1, n + 1):
        h += np.pi * sys.frequencies[j - 1] * single_qubit_op(SIGMA["Z"], j, n)
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            jjk = sys.coupling(j, k)
            if jjk == 0.0:
                continue
            for sym in "XYZ":
                term = single_qubit_op(SIGMA[sym], j, n) @ single_qubit_op(SIGMA[sym], k, n)
                h += (np.pi * jjk / 2.0) * term
    return h


def pair_coupling_operator(j: int, k: int, n_qubits: int) -> np.ndarray:
    """X_jX_k + Y_jY_k + Z_jZ_k for one coupled pair (dimensionless)."""
    out = np.zeros((2 ** n_qubits, 2 ** n_qubits), dtype=complex)
    for sym in "XYZ":
        out += single_qubit_op(SIGMA[sym], j, n_qubits) @ single_qubit_op(SIGMA[sym], k, n_qubits)
    return out


def rotation(axis: str, angle: float) -> np.ndarray:
    """Single-qubit rotation exp(-i*angle*P/2) about the x, y, or z axis."""
    p = SIGMA[axis.upper()]
    return np.cos(angle / 2) * SIGMA["I"] - 1j * np.sin(angle / 2) * p


def propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i*h*t) for a Hermitian generator h (rad/s) and t in seconds."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("generator must be a square matrix")
    if not np.allclose(h, h.conj().T, atol=1e-10):
        raise ValueError("generator must be Hermitian")
    if t < 0:
        raise ValueError("propagation time must be non-negative")
    return expm(-1j * h * t)
