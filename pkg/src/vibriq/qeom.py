"""Excited states from the equation-of-motion pseudo-eigenvalue problem.

The operator pool reuses the ansatz excitation set (orders 1 and 2).
Matrix elements are expectations of commutators and symmetrized double
commutators in the supplied ground state, evaluated exactly from the
statevector; the resulting block problem is solved classically and its
positive branch returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .circuits import Excitation, excitation_list, excitation_sq_terms
from .mapping import QubitLayout, map_to_pauli
from .pauli import PauliSum, commutator
from .simulator import StateVector, expectation_value

METRIC_SINGULARITY_RTOL = 1e-10


def double_commutator(a: PauliSum, h: PauliSum, b: PauliSum) -> PauliSum:
    """Symmetrized double commutator ([[a,h],b] + [a,[h,b]]) / 2.

    Reduces to [a,[h,b]] whenever [a,b] commutes with h.
    """
    left = commutator(commutator(a, h), b)
    right = commutator(a, commutator(h, b))
    return (left + right) * 0.5


@dataclass(frozen=True)
class EomOperators:
    """Excitation operators (and adjoints) of the pool, as Pauli sums."""

    excitations: tuple[Excitation, ...]
    operators: tuple[PauliSum, ...]
    adjoints: tuple[PauliSum, ...]

    @property
    def size(self) -> int:
        return len(self.operators)


def build_eom_operators(layout: QubitLayout, max_order: int = 2) -> EomOperators:
    excitations = tuple(excitation_list(layout, max_order))
    operators = tuple(map_to_pauli(excitation_sq_terms(exc), layout)
                      for exc in excitations)
    adjoints = tuple(op.adjoint() for op in operators)
    return EomOperators(excitations, operators, adjoints)


@dataclass(frozen=True)
class EomMatrices:
    m: np.ndarray
    q: np.ndarray
    v: np.ndarray
    w: np.ndarray

    @property
    def size(self) -> int:
        return self.m.shape[0]


def compute_matrices(ground: StateVector, h: PauliSum,
                     ops: EomOperators) -> EomMatrices:
    """Commutator expectations in the (approximate) ground state."""
    if ground.num_qubits != h.num_qubits:
        raise ValueError("state and Hamiltonian disagree on the qubit count")
    size = ops.size
    m = np.zeros((size, size), dtype=np.complex128)
    q = np.zeros((size, size), dtype=np.complex128)
    v = np.zeros((size, size), dtype=np.complex128)
    w = np.zeros((size, size), dtype=np.complex128)
    for i in range(size):
        dag = ops.adjoints[i]
        for j in range(size):
            op = ops.operators[j]
            op_dag = ops.adjoints[j]
            m[i, j] = expectation_value(ground, double_commutator(dag, h, op))
            q[i, j] = -expectation_value(ground, double_commutator(dag, h, op_dag))
            v[i, j] = expectation_value(ground, commutator(dag, op))
            w[i, j] = -expectation_value(ground, commutator(dag, op_dag))
    return EomMatrices(m, q, v, w)


def solve_pseudo_eigenproblem(matrices: EomMatrices,
                              threshold: float = 1e-6) -> np.ndarray:
    """Positive excitation energies of the block generalized problem.

    Eigenvalues come in +-E pairs; the negative mirrors and anything with
    |E| below the threshold are discarded, the rest returned ascending
    with multiplicity.
    """
    m, q, v, w = matrices.m, matrices.q, matrices.v, matrices.w
    a = np.block([[m, q], [np.conj(q), np.conj(m)]])
    b = np.block([[v, w], [-np.conj(w), -np.conj(v)]])
    singular_values = np.linalg.svd(b, compute_uv=False)
    cutoff = singular_values.max() * METRIC_SINGULARITY_RTOL \
        if singular_values.size else 0.0
    null_dim = int(np.sum(singular_values <= cutoff))
    if null_dim > 0:
        raise ValueError(
            f"metric block is singular: near-null subspace dimension "
            f"{null_dim} of {b.shape[0]}")
    values = linalg.eigvals(a, b)
    values = values[np.isfinite(values)]
    energies = np.sort(values.real[values.real > threshold])
    return energies


def excitation_energies(ground: StateVector, h: PauliSum, layout: QubitLayout,
                        max_order: int = 2,
                        threshold: float = 1e-6) -> tuple[np.ndarray, EomMatrices,
                                                          EomOperators]:
    """End-to-end pipeline: pool, matrices, solved positive energies."""
    ops = build_eom_operators(layout, max_order)
    matrices = compute_matrices(ground, h, ops)
    energies = solve_pseudo_eigenproblem(matrices, threshold)
    return energies, matrices, ops
