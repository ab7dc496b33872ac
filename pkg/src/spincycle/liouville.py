"""Vectorized density matrices, superoperators, relaxation, and fidelity.

Column-stacking vectorization is fixed project-wide: ``vec(rho)`` stacks the
columns of rho, and a unitary U acts on vectorized states as conj(U) (x) U, so
that ``apply(unitary_to_superop(U), vec(rho)) == vec(U rho U^dag)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .spincore import SIGMA, SpinSystem


def _require_power_of_two(n: int) -> None:
    if n < 1 or (n & (n - 1)) != 0:
        raise ValueError(f"dimension {n} is not a power of two")


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a density matrix into a Liouville-space vector."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    _require_power_of_two(rho.shape[0])
    return rho.flatten(order="F")


def devectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    v = np.asarray(v, dtype=complex).ravel()
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise ValueError(f"vector length {v.size} is not a perfect square")
    _require_power_of_two(n)
    return v.reshape((n, n), order="F")


def unitary_to_superop(u: np.ndarray) -> np.ndarray:
    """conj(U) (x) U, the Liouville-space action of U rho U^dag."""
    u = np.asarray(u, dtype=complex)
    defect = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if defect > 1e-10:
        raise ValueError(f"input is not unitary: ||U^dag U - I|| = {defect:.3e}")
    return np.kron(u.conj(), u)


def apply_superop(s: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.asarray(s) @ np.asarray(v)


def mix_channels(channels: list[np.ndarray], weights: list[float]) -> np.ndarray:
    """Probabilistic mixture sum_k p_k S_k of superoperators."""
    if len(channels) != len(weights):
        raise ValueError("channels and weights must have equal length")
    if len(channels) == 0:
        raise ValueError("at least one channel is required")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    shape = np.asarray(channels[0]).shape
    out = np.zeros(shape, dtype=complex)
    for wk, ck in zip(w, channels):
        ck = np.asarray(ck, dtype=complex)
        if ck.shape != shape:
            raise ValueError("all channels must have equal dimensions")
        out += wk * ck
    return out


def pauli_labels(n_qubits: int) -> list[str]:
    """All 4^n Pauli-product labels in lexicographic I,X,Y,Z order."""
    return ["".join(t) for t in itertools.product("IXYZ", repeat=n_qubits)]


def pauli_basis_matrix(n_qubits: int) -> np.ndarray:
    """Unitary change of frame whose columns are vec(P_a)/sqrt(2^n)."""
    from .spincore import pauli_product

    dim = 2 ** n_qubits
    cols = [vectorize(pauli_product(lab)) / np.sqrt(dim) for lab in pauli_labels(n_qubits)]
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class RelaxationRates:
    """Decay rate (1/s) of each generalized Pauli basis coefficient.

    Labels absent from ``rates`` decay at rate zero.  The all-identity label
    must have rate zero so the channel preserves trace.
    """

    n_qubits: int
    rates: dict[str, float]

    def __post_init__(self):
        identity = "I" * self.n_qubits
        for label, rate in self.rates.items():
            if len(label) != self.n_qubits or any(s not in "IXYZ" for s in label):
                raise ValueError(f"invalid Pauli label {label!r}")
            if rate < 0:
                raise ValueError(f"negative rate for label {label!r}")
        if self.rates.get(identity, 0.0) != 0.0:
            raise ValueError("the all-identity label must have rate 0")

    def rate(self, label: str) -> float:
        return self.rates.get(label, 0.0)

    @classmethod
    def from_spin_system(cls, sys: SpinSystem) -> "RelaxationRates":
        """Additive default: each non-identity single-spin factor contributes
        1/T2 (X or Y) or 1/T1 (Z); a product operator decays at the sum."""
        rates = {}
        for label in pauli_labels(sys.n_qubits):
            r = 0.0
            for j, sym in enumerate(label):
                if sym in "XY":
                    r += 1.0 / sys.t2[j]
                elif sym == "Z":
                    r += 1.0 / sys.t1[j]
            rates[label] = r
        return cls(n_qubits=sys.n_qubits, rates=rates)


def relaxation_superop(rates: RelaxationRates, t: float) -> np.ndarray:
    """Channel diagonal in the Pauli-product basis: coefficient of P_a is
    scaled by exp(-r_a * t).  Decays toward the maximally mixed state."""
    if t < 0:
        raise ValueError("relaxation time must be non-negative")
    b = pauli_basis_matrix(rates.n_qubits)
    diag = np.array([np.exp(-rates.rate(lab) * t) for lab in pauli_labels(rates.n_qubits)])
    return (b * diag) @ b.conj().T


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt inner product trace(devec(a)^dag devec(b)) of two
    vectorized Hermitian states."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        raise ValueError("state dimensions do not match")
    val = np.vdot(a, b)
    if abs(val.imag) > 1e-10:
        raise ValueError(f"fidelity has non-negligible imaginary part {val.imag:.3e}")
    return float(val.real)


def purity(a: np.ndarray) -> float:
    """trace(rho^2) of a vectorized state."""
    return fidelity(a, a)
