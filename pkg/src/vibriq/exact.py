"""Dense brute-force reference: full matrices and physical-subspace spectra.

The physical subspace is spanned by basis states with exactly one set bit
per mode register.  Its ordering enumerates occupied modals with mode 0
varying fastest, which coincides with ascending basis-index order for the
register layout used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from .mapping import QubitLayout
from .pauli import PauliSum
from .simulator import StateVector

DENSE_QUBIT_CAP = 14

_PAULI_MATS = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
}


def _check_cap(num_qubits: int) -> None:
    if num_qubits > DENSE_QUBIT_CAP:
        raise ValueError(
            f"dense construction capped at {DENSE_QUBIT_CAP} qubits, "
            f"got {num_qubits}")


def dense_matrix(op: PauliSum) -> np.ndarray:
    """Kronecker assembly of a Pauli sum (qubit 0 = least significant bit)."""
    n = op.num_qubits
    _check_cap(n)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    for term in op.terms:
        mats = [_PAULI_MATS[term.label[q]] for q in range(n - 1, -1, -1)]
        out += term.coefficient * reduce(np.kron, mats)
    return out


@dataclass(frozen=True)
class PhysicalProjector:
    """Basis indices with exactly one occupied modal per mode register."""

    layout: QubitLayout
    onvs: tuple[tuple[int, ...], ...]
    indices: np.ndarray

    @classmethod
    def build(cls, layout: QubitLayout) -> "PhysicalProjector":
        offsets = layout.offsets
        onvs = []
        indices = []
        ranges = [range(n) for n in reversed(layout.modal_counts)]
        for rev in product(*ranges):
            onv = rev[::-1]
            onvs.append(onv)
            indices.append(sum(1 << (offsets[l] + k) for l, k in enumerate(onv)))
        return cls(layout, tuple(onvs), np.array(indices, dtype=np.int64))

    @property
    def dimension(self) -> int:
        return len(self.indices)


def project_physical(matrix: np.ndarray, layout: QubitLayout) -> np.ndarray:
    proj = PhysicalProjector.build(layout)
    return matrix[np.ix_(proj.indices, proj.indices)]


def physical_spectrum(h: PauliSum, layout: QubitLayout) -> np.ndarray:
    """Ascending eigenvalues of the Hamiltonian within the physical subspace."""
    if h.num_qubits != layout.num_qubits:
        raise ValueError("operator and layout disagree on the qubit count")
    _check_cap(layout.num_qubits)
    sub = project_physical(dense_matrix(h), layout)
    return np.linalg.eigvalsh(sub)


def ground_state_vector(h: PauliSum, layout: QubitLayout
                        ) -> tuple[float, StateVector]:
    """Lowest physical eigenpair, embedded back into the full qubit space."""
    if h.num_qubits != layout.num_qubits:
        raise ValueError("operator and layout disagree on the qubit count")
    _check_cap(layout.num_qubits)
    proj = PhysicalProjector.build(layout)
    sub = dense_matrix(h)[np.ix_(proj.indices, proj.indices)]
    vals, vecs = np.linalg.eigh(sub)
    vec = vecs[:, 0]
    # deterministic gauge: largest-magnitude component real and positive
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (np.abs(vec[k]) / vec[k])
    amps = np.zeros(1 << layout.num_qubits, dtype=np.complex128)
    amps[proj.indices] = vec
    return float(vals[0]), StateVector(layout.num_qubits, amps)
