"""Shared test oracles, independent of the code paths they check."""

from __future__ import annotations

from functools import reduce
from itertools import product

import numpy as np

from vibriq.mapping import QubitLayout, SqTerm
from vibriq.pauli import PauliSum

PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_from_label(label: str) -> np.ndarray:
    """Kronecker matrix of one Pauli label (qubit 0 = leftmost = LSB)."""
    return reduce(np.kron, [PAULI_MATS[c] for c in reversed(label)])


def dense_from_sum(op: PauliSum) -> np.ndarray:
    dim = 1 << op.num_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for term in op.terms:
        out += term.coefficient * dense_from_label(term.label)
    return out


def random_pauli_sum(rng: np.random.Generator, num_qubits: int, n_terms: int,
                     hermitian: bool = False) -> PauliSum:
    labels = ["".join(rng.choice(list("IXYZ"), size=num_qubits))
              for _ in range(n_terms)]
    if hermitian:
        coeffs = rng.normal(size=n_terms)
    else:
        coeffs = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
    return PauliSum(num_qubits, list(zip(labels, coeffs)))


def physical_onvs(layout: QubitLayout) -> list[tuple[int, ...]]:
    """Occupied-modal tuples, mode 0 varying fastest."""
    ranges = [range(n) for n in reversed(layout.modal_counts)]
    return [rev[::-1] for rev in product(*ranges)]


def onv_rule_matrix(terms: list[SqTerm], layout: QubitLayout) -> np.ndarray:
    """Hamiltonian matrix over the physical ONV basis from the ladder rules.

    A factor (l, k, h) connects an ONV occupying modal h of mode l to the
    ONV occupying modal k instead; all other modes must match.  This is a
    direct transcription of the creation/annihilation action, with no
    Pauli algebra involved.
    """
    onvs = physical_onvs(layout)
    index = {onv: i for i, onv in enumerate(onvs)}
    dim = len(onvs)
    mat = np.zeros((dim, dim), dtype=complex)
    for term in terms:
        for col, onv in enumerate(onvs):
            target = list(onv)
            ok = True
            for mode, k, h in term.factors:
                if onv[mode] != h:
                    ok = False
                    break
                target[mode] = k
            if ok:
                mat[index[tuple(target)], col] += term.coefficient
    return mat


def random_sq_hamiltonian(rng: np.random.Generator,
                          layout: QubitLayout) -> list[SqTerm]:
    """Random Hermitian one- plus two-body transfer-operator list."""
    terms: dict[tuple, float] = {}

    def add(factors, coeff):
        terms[factors] = terms.get(factors, 0.0) + coeff

    counts = layout.modal_counts
    for mode, n in enumerate(counts):
        sym = rng.normal(size=(n, n))
        sym = 0.5 * (sym + sym.T)
        for k in range(n):
            for h in range(n):
                add(((mode, k, h),), float(sym[k, h]))
    for l in range(layout.num_modes):
        for m in range(l + 1, layout.num_modes):
            if rng.random() < 0.5 and layout.num_modes > 2:
                continue
            a = rng.normal(size=(counts[l], counts[l]))
            b = rng.normal(size=(counts[m], counts[m]))
            a = 0.5 * (a + a.T)
            b = 0.5 * (b + b.T)
            for kl in range(counts[l]):
                for hl in range(counts[l]):
                    for km in range(counts[m]):
                        for hm in range(counts[m]):
                            add(((l, kl, hl), (m, km, hm)),
                                float(a[kl, hl] * b[km, hm]))
    return [SqTerm(c, f) for f, c in terms.items() if abs(c) > 1e-14]


# -- dense circuit / noise oracles -------------------------------------------

def dense_gate_matrix(gate, angle, num_qubits: int) -> np.ndarray:
    """Full 2^N x 2^N matrix of one gate, built by explicit basis action."""
    dim = 1 << num_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    if gate.kind == "cnot":
        c, t = gate.qubits
        for j in range(dim):
            mat[j ^ (((j >> c) & 1) << t), j] = 1.0
        return mat
    q = gate.qubits[0]
    if gate.kind == "x":
        local = PAULI_MATS["X"]
    elif gate.kind == "h":
        local = (PAULI_MATS["X"] + PAULI_MATS["Z"]) / np.sqrt(2)
    elif gate.kind == "phase":
        local = np.diag([1.0, np.exp(1j * angle)])
    elif gate.kind == "rx":
        local = (np.cos(angle / 2) * PAULI_MATS["I"]
                 - 1j * np.sin(angle / 2) * PAULI_MATS["X"])
    elif gate.kind == "ry":
        local = (np.cos(angle / 2) * PAULI_MATS["I"]
                 - 1j * np.sin(angle / 2) * PAULI_MATS["Y"])
    elif gate.kind == "rz":
        local = (np.cos(angle / 2) * PAULI_MATS["I"]
                 - 1j * np.sin(angle / 2) * PAULI_MATS["Z"])
    else:
        raise ValueError(gate.kind)
    for j in range(dim):
        bit = (j >> q) & 1
        for out_bit in (0, 1):
            amp = local[out_bit, bit]
            if amp != 0:
                mat[j ^ ((bit ^ out_bit) << q), j] += amp
    return mat


def dense_circuit_unitary(circuit, params) -> np.ndarray:
    dim = 1 << circuit.num_qubits
    u = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        u = dense_gate_matrix(gate, gate.resolved_angle(params),
                              circuit.num_qubits) @ u
    return u


def density_matrix_simulation(circuit, params, noise) -> np.ndarray:
    """Gate unitaries interleaved with exact depolarizing channels.

    The channel matches the trajectory model: with the class probability,
    one uniformly random non-identity Pauli on the gate's qubits.
    """
    n = circuit.num_qubits
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    for gate in circuit.gates:
        angle = gate.resolved_angle(params)
        u = dense_gate_matrix(gate, angle, n)
        rho = u @ rho @ u.conj().T
        p = noise.gate_probability(gate, angle)
        if p <= 0:
            continue
        k = len(gate.qubits)
        letters = [l for l in product("IXYZ", repeat=k) if set(l) != {"I"}]
        mixed = np.zeros_like(rho)
        for ls in letters:
            label = ["I"] * n
            for q, letter in zip(gate.qubits, ls):
                label[q] = letter
            pauli = dense_from_label("".join(label))
            mixed += pauli @ rho @ pauli
        rho = (1 - p) * rho + (p / len(letters)) * mixed
    return rho
