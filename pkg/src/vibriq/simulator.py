"""Exact statevector simulation, sampling, and stochastic Pauli noise.

Basis convention: bit q of a basis index is the value of qubit q, and
bitstrings render qubit 0 as the leftmost character.  The noise model is
the Monte-Carlo unraveling of depolarization: after each gate, with the
gate-class probability, one uniformly random non-identity Pauli acts on
the gate's qubits (15 choices for a CNOT).  Averaging trajectories
converges to the depolarizing channel; a single trajectory stays a pure
state, so memory is 2^N amplitudes throughout.

Gate classes follow the published rates: H, RX(+-pi/2) and PHASE are
U2-like, every other single-qubit rotation (including X) is U3-like, and
CNOT has its own rate.  Seeds are split with ``numpy`` SeedSequences, so
a fixed master seed fixes every derived stream.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .circuits import Circuit, Gate, build_chc, build_uvcc, excitation_list
from .mapping import QubitLayout
from .pauli import PauliSum

NORM_TOL = 1e-10


def max_threads() -> int:
    """Parallelism cap for embarrassingly parallel loops (VIBRIQ_THREADS)."""
    try:
        return max(1, int(os.environ.get("VIBRIQ_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class StateVector:
    """2^N complex amplitudes; bit q of the index is qubit q's value."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise ValueError("amplitude length must be 2^num_qubits")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def vacuum(cls, num_qubits: int) -> "StateVector":
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def basis_state(cls, num_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def bitstring(index: int, num_qubits: int) -> str:
    """Render a basis index with qubit 0 leftmost."""
    return "".join("1" if (index >> q) & 1 else "0" for q in range(num_qubits))


def bitstring_index(bits: str) -> int:
    return sum(1 << q for q, b in enumerate(bits) if b == "1")


# -- gate application --------------------------------------------------------

def _rotation_matrix(kind: str, angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    if kind == "rx":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if kind == "ry":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if kind == "rz":
        return np.array([[c - 1j * s, 0.0], [0.0, c + 1j * s]],
                        dtype=np.complex128)
    raise ValueError(f"not a rotation kind: {kind!r}")


_H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


def _apply_1q_matrix(amps: np.ndarray, mat: np.ndarray, qubit: int,
                     num_qubits: int) -> np.ndarray:
    """Apply a 2x2 matrix to one qubit; works on any (..., 2^N) stack."""
    lead = amps.shape[:-1]
    lo = 1 << qubit
    hi = 1 << (num_qubits - qubit - 1)
    view = amps.reshape(lead + (hi, 2, lo))
    out = np.einsum("ij,...hjl->...hil", mat, view)
    return np.ascontiguousarray(out).reshape(lead + (1 << num_qubits,))


@lru_cache(maxsize=4096)
def _flip_permutation(num_qubits: int, mask: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    return idx ^ mask


@lru_cache(maxsize=4096)
def _cnot_permutation(num_qubits: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    return idx ^ (((idx >> control) & 1) << target)


def _apply_gate(amps: np.ndarray, gate: Gate, angle: float | None,
                num_qubits: int) -> np.ndarray:
    kind = gate.kind
    if kind == "cnot":
        perm = _cnot_permutation(num_qubits, gate.qubits[0], gate.qubits[1])
        return amps[..., perm]
    if kind == "x":
        perm = _flip_permutation(num_qubits, 1 << gate.qubits[0])
        return amps[..., perm]
    if kind == "h":
        return _apply_1q_matrix(amps, _H_MATRIX, gate.qubits[0], num_qubits)
    if kind == "phase":
        out = amps.copy()
        q = gate.qubits[0]
        idx = np.arange(1 << num_qubits)
        sel = (idx >> q) & 1 == 1
        out[..., sel] *= np.exp(1j * angle)
        return out
    if kind in ("rx", "ry", "rz"):
        return _apply_1q_matrix(amps, _rotation_matrix(kind, angle),
                                gate.qubits[0], num_qubits)
    raise ValueError(f"unknown gate kind {kind!r}")


def _run_circuit(amps: np.ndarray, circuit: Circuit,
                 params: Sequence[float]) -> np.ndarray:
    n = circuit.num_qubits
    for gate in circuit.gates:
        amps = _apply_gate(amps, gate, gate.resolved_angle(params), n)
    return amps


def apply_circuit(circuit: Circuit, params: Sequence[float] = (),
                  state: StateVector | None = None) -> StateVector:
    """Exact gate-by-gate action; starts from the vacuum when no state given."""
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.num_parameters,):
        raise ValueError(f"expected {circuit.num_parameters} parameters, "
                         f"got {params.shape}")
    if state is None:
        state = StateVector.vacuum(circuit.num_qubits)
    elif state.num_qubits != circuit.num_qubits:
        raise ValueError("state and circuit disagree on the qubit count")
    amps = _run_circuit(state.amplitudes.copy(), circuit, params)
    return StateVector(circuit.num_qubits, amps)


# -- Pauli expectation values -------------------------------------------------

@lru_cache(maxsize=8192)
def _pauli_action(num_qubits: int, label: str) -> tuple[np.ndarray, np.ndarray]:
    """Permutation and per-index phase with P|j> = phase[j'] |j' = j^flip>."""
    flip = 0
    sign_mask = 0
    n_y = 0
    for q, letter in enumerate(label):
        if letter == "X":
            flip |= 1 << q
        elif letter == "Y":
            flip |= 1 << q
            sign_mask |= 1 << q
            n_y += 1
        elif letter == "Z":
            sign_mask |= 1 << q
    idx = np.arange(1 << num_qubits)
    perm = idx ^ flip
    parity = np.bitwise_count(perm & sign_mask) & 1
    front = (1.0, 1.0j, -1.0, -1.0j)[n_y % 4]
    phase = front * np.where(parity, -1.0, 1.0)
    return perm, phase.astype(np.complex128)


def expectation_value(state: StateVector, op: PauliSum) -> complex:
    """<psi|op|psi> for an arbitrary (possibly non-Hermitian) Pauli sum."""
    if state.num_qubits != op.num_qubits:
        raise ValueError("state and operator disagree on the qubit count")
    amps = state.amplitudes
    total = 0.0 + 0.0j
    for term in op.terms:
        perm, phase = _pauli_action(state.num_qubits, term.label)
        total += term.coefficient * np.vdot(amps, phase * amps[perm])
    return complex(total)


def expectation(state: StateVector, op: PauliSum,
                imag_tol: float = 1e-10) -> float:
    """Real expectation value of a Hermitian Pauli sum.

    A non-negligible imaginary residue signals a non-Hermitian operator
    and raises instead of being silently discarded.
    """
    value = expectation_value(state, op)
    scale = max(1.0, abs(value))
    if abs(value.imag) > imag_tol * scale:
        raise ValueError(
            f"expectation has imaginary part {value.imag:.3e}; operator is "
            "not Hermitian")
    return float(value.real)


# -- sampling ------------------------------------------------------------------

@dataclass(frozen=True)
class ShotCounts:
    """Counts per bitstring (qubit 0 leftmost); values sum to ``shots``."""

    counts: Mapping[str, int]
    shots: int

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(self.counts))
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts must sum to the declared shot total")

    def to_dict(self) -> dict[str, int]:
        return {k: self.counts[k] for k in sorted(self.counts)}


def sample(state: StateVector, shots: int, seed=None) -> ShotCounts:
    """Multinomial draw from |amplitude|^2; deterministic for a fixed seed."""
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = np.random.default_rng(seed)
    probs = state.probabilities()
    probs = probs / probs.sum()
    draws = rng.multinomial(shots, probs)
    n = state.num_qubits
    counts = {bitstring(i, n): int(c) for i, c in enumerate(draws) if c > 0}
    return ShotCounts(counts, shots)


def distribution_fidelity(a: ShotCounts, ref: ShotCounts) -> float:
    """1 - sum|C_a - C_ref| / sum(C_a + C_ref), in [0, 1]."""
    denom = a.shots + ref.shots
    if denom == 0:
        raise ValueError("both count sets are empty")
    keys = set(a.counts) | set(ref.counts)
    l1 = sum(abs(a.counts.get(k, 0) - ref.counts.get(k, 0)) for k in keys)
    return 1.0 - l1 / denom


# -- depolarizing trajectories -------------------------------------------------

@dataclass(frozen=True)
class NoiseModel:
    """Per-gate-class depolarizing probabilities (published device averages)."""

    p_u2: float = 7e-4
    p_u3: float = 1.4e-3
    p_cx: float = 2.2e-2

    def __post_init__(self):
        for p in (self.p_u2, self.p_u3, self.p_cx):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must be in [0, 1]")

    def gate_probability(self, gate: Gate, angle: float | None) -> float:
        if gate.kind == "cnot":
            return self.p_cx
        if gate.kind in ("h", "phase"):
            return self.p_u2
        if gate.kind == "rx" and angle is not None \
                and abs(abs(angle) - math.pi / 2.0) < 1e-12:
            return self.p_u2
        return self.p_u3


def _pauli_choice_label(choice: int, qubits: tuple[int, ...],
                        num_qubits: int) -> str:
    letters = ["I"] * num_qubits
    for j, q in enumerate(qubits):
        letters[q] = "IXYZ"[(choice >> (2 * j)) & 3]
    return "".join(letters)


def _insert_pauli(amps: np.ndarray, choice: int, qubits: tuple[int, ...],
                  num_qubits: int) -> np.ndarray:
    label = _pauli_choice_label(choice, qubits, num_qubits)
    perm, phase = _pauli_action(num_qubits, label)
    return phase * amps[..., perm]


def noisy_trajectory(circuit: Circuit, params: Sequence[float],
                     noise: NoiseModel, seed=None,
                     state: StateVector | None = None) -> StateVector:
    """One stochastic trajectory of the depolarizing unraveling."""
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.num_parameters,):
        raise ValueError(f"expected {circuit.num_parameters} parameters")
    rng = np.random.default_rng(seed)
    n = circuit.num_qubits
    amps = (StateVector.vacuum(n) if state is None else state).amplitudes.copy()
    for gate in circuit.gates:
        angle = gate.resolved_angle(params)
        amps = _apply_gate(amps, gate, angle, n)
        p = noise.gate_probability(gate, angle)
        if p > 0.0 and rng.random() < p:
            n_paulis = (1 << (2 * len(gate.qubits))) - 1
            choice = int(rng.integers(1, n_paulis + 1))
            amps = _insert_pauli(amps, choice, gate.qubits, n)
    return StateVector(n, amps)


def _noisy_batch(circuit: Circuit, params: Sequence[float], noise: NoiseModel,
                 batch: int, rng: np.random.Generator) -> np.ndarray:
    """(batch, 2^N) stack of independent trajectories, vectorized per gate."""
    n = circuit.num_qubits
    amps = np.zeros((batch, 1 << n), dtype=np.complex128)
    amps[:, 0] = 1.0
    for gate in circuit.gates:
        angle = gate.resolved_angle(params)
        amps = _apply_gate(amps, gate, angle, n)
        p = noise.gate_probability(gate, angle)
        if p <= 0.0:
            continue
        hit = rng.random(batch) < p
        rows = np.nonzero(hit)[0]
        if rows.size == 0:
            continue
        n_paulis = (1 << (2 * len(gate.qubits))) - 1
        choices = rng.integers(1, n_paulis + 1, size=rows.size)
        for choice in np.unique(choices):
            sel = rows[choices == choice]
            label = _pauli_choice_label(int(choice), gate.qubits, n)
            perm, phase = _pauli_action(n, label)
            amps[sel] = phase * amps[sel][:, perm]
    return amps


def noisy_counts(circuit: Circuit, params: Sequence[float], noise: NoiseModel,
                 shots: int, seed=None) -> ShotCounts:
    """Measurement counts with a fresh trajectory per shot."""
    if shots < 1:
        raise ValueError("shots must be positive")
    params = np.asarray(params, dtype=float)
    rng = np.random.default_rng(seed)
    amps = _noisy_batch(circuit, params, noise, shots, rng)
    probs = np.abs(amps) ** 2
    probs /= probs.sum(axis=1, keepdims=True)
    u = rng.random((shots, 1))
    dim = 1 << circuit.num_qubits
    outcomes = (np.cumsum(probs, axis=1) < u).sum(axis=1)
    outcomes = np.minimum(outcomes, dim - 1)  # cumsum can end at 1 - eps
    draws = np.bincount(outcomes, minlength=dim)
    n = circuit.num_qubits
    counts = {bitstring(i, n): int(c) for i, c in enumerate(draws) if c > 0}
    return ShotCounts(counts, shots)


# -- distribution-fidelity experiment -----------------------------------------

def run_fidelity_experiment(modal_counts: Sequence[int], trials: int = 10,
                            shots: int = 10000, seed: int = 0,
                            noise: NoiseModel | None = None,
                            param_range: float = 0.2) -> dict:
    """Noisy-circuit fidelities against the ideal cluster-ansatz reference.

    Per trial: draw one parameter set uniformly from [-range, range],
    sample the noise-free reference distribution, then the noisy
    distribution of each ansatz, and score the count-overlap fidelity.
    Fidelity is computed per trial and averaged afterwards.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    noise = noise or NoiseModel()
    layout = QubitLayout(tuple(modal_counts))
    excitations = excitation_list(layout, 2)
    circuits = {"uvccsd": build_uvcc(layout, excitations),
                "chc": build_chc(layout, excitations)}
    n_params = len(excitations)
    children = np.random.SeedSequence(seed).spawn(trials)

    def run_trial(trial: int) -> dict[str, float]:
        s_params, s_ref, s_uvcc, s_chc = children[trial].spawn(4)
        rng = np.random.default_rng(s_params)
        params = rng.uniform(-param_range, param_range, size=n_params)
        ideal = apply_circuit(circuits["uvccsd"], params)
        ref = sample(ideal, shots, seed=s_ref)
        noisy_seeds = {"uvccsd": s_uvcc, "chc": s_chc}
        return {name: distribution_fidelity(
                    noisy_counts(circ, params, noise, shots,
                                 seed=noisy_seeds[name]), ref)
                for name, circ in circuits.items()}

    workers = min(max_threads(), trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(run_trial, range(trials)))
    else:
        per_trial = [run_trial(t) for t in range(trials)]

    report: dict = {
        "trials": trials,
        "shots": shots,
        "seed": seed,
        "modal_counts": list(modal_counts),
        "noise": {"p_u2": noise.p_u2, "p_u3": noise.p_u3, "p_cx": noise.p_cx},
        "param_range": param_range,
        "fidelity": {},
    }
    for name in circuits:
        values = [t[name] for t in per_trial]
        report["fidelity"][name] = {
            "values": values,
            "mean": float(np.mean(values)),
            "stddev": float(np.std(values, ddof=1)) if trials > 1 else 0.0,
        }
    return report
