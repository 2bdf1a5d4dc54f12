"""Parametrized ansatz circuits and exact resource counting.

Gate angles are either constants or ``scale * theta[param]``.  Every
excitation exponential is compiled with the standard Pauli-gadget recipe:
basis changes (H for X, RX(+-pi/2) for Y), a CNOT ladder onto the last
involved qubit, one RZ, and the mirror image.  A two-qubit string costs
2 CNOTs and a four-qubit string 6, which reproduces the published per-
excitation budgets: 4 CNOTs per single and 48 per double for the cluster
ansatz, 2 and 6 for its compact heuristic approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .mapping import QubitLayout, SqTerm, map_to_pauli
from .pauli import PauliSum

GATE_KINDS = ("x", "h", "rx", "ry", "rz", "phase", "cnot")


class Gate(NamedTuple):
    """One gate; ``angle`` for constants, ``(param, scale)`` for bound angles."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    param: int | None = None
    scale: float = 1.0

    def resolved_angle(self, params: Sequence[float]) -> float | None:
        if self.param is not None:
            return self.scale * float(params[self.param])
        return self.angle


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...]
    num_parameters: int

    def validate(self) -> "Circuit":
        """Check every gate; builders emit valid gates, so this is only
        run on deserialized input."""
        for g in self.gates:
            if g.kind not in GATE_KINDS:
                raise ValueError(f"unknown gate kind {g.kind!r}")
            arity = 2 if g.kind == "cnot" else 1
            if len(g.qubits) != arity:
                raise ValueError(f"{g.kind} takes {arity} qubit(s), got {g}")
            if any(q < 0 or q >= self.num_qubits for q in g.qubits):
                raise ValueError(f"gate {g} touches a qubit outside the register")
            if g.kind == "cnot" and g.qubits[0] == g.qubits[1]:
                raise ValueError("CNOT control and target must differ")
            if g.param is not None and not 0 <= g.param < self.num_parameters:
                raise ValueError(f"parameter index {g.param} out of range")
            if g.kind in ("rx", "ry", "rz", "phase"):
                if (g.param is None) == (g.angle is None):
                    raise ValueError(
                        f"rotation {g} needs exactly one angle binding")
            elif g.param is not None or g.angle is not None:
                raise ValueError(f"{g.kind} takes no angle, got {g}")
        return self

    def to_dicts(self) -> list[dict]:
        out = []
        for g in self.gates:
            d: dict = {"kind": g.kind, "qubits": list(g.qubits)}
            if g.param is not None:
                d["param_index"] = g.param
                d["scale"] = g.scale
            elif g.angle is not None:
                d["angle"] = g.angle
            out.append(d)
        return out

    @classmethod
    def from_dicts(cls, num_qubits: int, dicts: Iterable[dict],
                   num_parameters: int) -> "Circuit":
        gates = tuple(
            Gate(d["kind"], tuple(d["qubits"]), angle=d.get("angle"),
                 param=d.get("param_index"), scale=d.get("scale", 1.0))
            for d in dicts)
        return cls(num_qubits, gates, num_parameters).validate()


def compose(first: Circuit, second: Circuit) -> Circuit:
    """Concatenate circuits, keeping their parameter sets independent."""
    if first.num_qubits != second.num_qubits:
        raise ValueError("qubit-count mismatch")
    shift = first.num_parameters
    shifted = tuple(g if g.param is None else g._replace(param=g.param + shift)
                    for g in second.gates)
    return Circuit(first.num_qubits, first.gates + shifted,
                   first.num_parameters + second.num_parameters)


# -- excitations -------------------------------------------------------------

class Excitation(NamedTuple):
    """Promotion out of the occupied (index 0) modal of one or two modes."""

    order: int
    modes: tuple[int, ...]
    virtuals: tuple[int, ...]
    occupied_qubits: tuple[int, ...]
    virtual_qubits: tuple[int, ...]


def excitation_list(layout: QubitLayout, max_order: int = 2) -> list[Excitation]:
    """All singles and (for max_order 2) doubles, modes and virtuals ascending."""
    if not 1 <= max_order <= 2:
        raise ValueError("excitation order must be 1 or 2")
    out = []
    counts = layout.modal_counts
    offs = layout.offsets
    for l in range(layout.num_modes):
        for v in range(1, counts[l]):
            out.append(Excitation(1, (l,), (v,), (offs[l],), (offs[l] + v,)))
    if max_order >= 2:
        for l in range(layout.num_modes):
            for m in range(l + 1, layout.num_modes):
                for vl in range(1, counts[l]):
                    for vm in range(1, counts[m]):
                        out.append(Excitation(2, (l, m), (vl, vm),
                                              (offs[l], offs[m]),
                                              (offs[l] + vl, offs[m] + vm)))
    return out


def excitation_sq_terms(exc: Excitation) -> list[SqTerm]:
    """The bare promotion operator of one excitation (coefficient 1)."""
    return [SqTerm(1.0, tuple((mode, virt, 0)
                              for mode, virt in zip(exc.modes, exc.virtuals)))]


def generator_pauli(exc: Excitation, layout: QubitLayout) -> PauliSum:
    """Anti-Hermitian generator T - T+ of one excitation as a Pauli sum."""
    t = map_to_pauli(excitation_sq_terms(exc), layout)
    return t - t.adjoint()


@lru_cache(maxsize=None)
def _generator_pattern(order: int) -> tuple[tuple[str, float], ...]:
    """Pauli letters (per role qubit) and imaginary weights of a generator.

    Computed once on a canonical layout; the letters are indexed by role,
    (occ, virt) for singles and (occ_l, virt_l, occ_m, virt_m) for doubles,
    which matches ascending qubit order for every real excitation.
    """
    layout = QubitLayout((2,) * order)
    exc = excitation_list(layout, order)[-1]
    pattern = []
    for term in generator_pauli(exc, layout).terms:
        if abs(term.coefficient.real) > 1e-14:
            raise AssertionError("generator coefficients must be imaginary")
        pattern.append((term.label, term.coefficient.imag))
    return tuple(pattern)


_OP_H, _OP_RXP, _OP_RXM, _OP_CNOT, _OP_RZ = range(5)


@lru_cache(maxsize=None)
def _uvcc_program(order: int) -> tuple[tuple[int, int, float], ...]:
    """Flat gate program of one cluster-excitation block on canonical roles.

    Entries are (op, role, scale); ops select the H / RX(+pi/2) /
    RX(-pi/2) / ladder-CNOT banks or a parametrized RZ.  Compiled once per
    order from the generic gadget emission, then stamped per excitation.
    """
    gates: list[Gate] = []
    roles = tuple(range(2 * order))
    for letters, gamma in _generator_pattern(order):
        pairs = [(q, letter) for q, letter in zip(roles, letters)
                 if letter != "I"]
        _append_pauli_gadget(gates, pairs, 0, -2.0 * gamma)
    program = []
    for g in gates:
        q = g.qubits[0]
        if g.kind == "h":
            program.append((_OP_H, q, 0.0))
        elif g.kind == "rx":
            program.append((_OP_RXP if g.angle > 0 else _OP_RXM, q, 0.0))
        elif g.kind == "cnot":
            program.append((_OP_CNOT, q, 0.0))
        else:
            program.append((_OP_RZ, q, g.scale))
    return tuple(program)


# -- gate emission -----------------------------------------------------------

_HALF_PI = math.pi / 2.0


def _append_pauli_gadget(gates: list[Gate], pairs: Sequence[tuple[int, str]],
                         param: int, scale: float) -> None:
    """exp(-i * (scale * theta[param]) / 2 * P) for P on the given qubits."""
    pairs = sorted(pairs)
    append = gates.append
    for q, letter in pairs:
        if letter == "X":
            append(Gate("h", (q,)))
        elif letter == "Y":
            append(Gate("rx", (q,), _HALF_PI))
        elif letter != "Z":
            raise ValueError(f"cannot exponentiate letter {letter!r}")
    qubits = [q for q, _ in pairs]
    for i in range(len(qubits) - 1):
        append(Gate("cnot", (qubits[i], qubits[i + 1])))
    append(Gate("rz", (qubits[-1],), None, param, scale))
    for i in range(len(qubits) - 2, -1, -1):
        append(Gate("cnot", (qubits[i], qubits[i + 1])))
    for q, letter in reversed(pairs):
        if letter == "X":
            append(Gate("h", (q,)))
        elif letter == "Y":
            append(Gate("rx", (q,), -_HALF_PI))


def reference_circuit(layout: QubitLayout) -> Circuit:
    """One X per mode register, occupying modal 0 of every mode."""
    gates = tuple(Gate("x", (off,)) for off in layout.offsets)
    return Circuit(layout.num_qubits, gates, 0)


def build_uvcc(layout: QubitLayout, excitations: Sequence[Excitation],
               trotter_steps: int = 1) -> Circuit:
    """Reference state followed by Trotterized cluster exponentials.

    Each excitation contributes one shared parameter; its generator's
    Pauli strings mutually commute, so a single step is exact per
    excitation and only the ordering between excitations is approximate.
    """
    if trotter_steps < 1:
        raise ValueError("trotter_steps must be >= 1")
    gates = list(reference_circuit(layout).gates)
    append = gates.append
    inv = 1.0 / trotter_steps
    for _ in range(trotter_steps):
        for index, exc in enumerate(excitations):
            roles = _role_qubits(exc)
            hs = [Gate("h", (q,)) for q in roles]
            rxp = [Gate("rx", (q,), _HALF_PI) for q in roles]
            rxm = [Gate("rx", (q,), -_HALF_PI) for q in roles]
            cns = [Gate("cnot", (roles[i], roles[i + 1]))
                   for i in range(len(roles) - 1)]
            banks = (hs, rxp, rxm, cns)
            for op, role, scale in _uvcc_program(exc.order):
                if op == _OP_RZ:
                    append(Gate("rz", (roles[role],), None, index, scale * inv))
                else:
                    append(banks[op][role])
    return Circuit(layout.num_qubits, tuple(gates), len(excitations))


def _role_qubits(exc: Excitation) -> tuple[int, ...]:
    if exc.order == 1:
        return (exc.occupied_qubits[0], exc.virtual_qubits[0])
    return (exc.occupied_qubits[0], exc.virtual_qubits[0],
            exc.occupied_qubits[1], exc.virtual_qubits[1])


def build_chc(layout: QubitLayout, excitations: Sequence[Excitation]) -> Circuit:
    """Compact blocks, one per excitation, applied sequentially.

    A single becomes exp(i theta Y_occ X_virt) and a double
    exp(i theta Y X X X) with the Y on the lowest involved qubit; on the
    reference state both act exactly like the corresponding cluster
    exponential, with the excited amplitude growing as +sin(theta).
    """
    gates = list(reference_circuit(layout).gates)
    for index, exc in enumerate(excitations):
        involved = sorted(exc.occupied_qubits + exc.virtual_qubits)
        pairs = [(involved[0], "Y")] + [(q, "X") for q in involved[1:]]
        _append_pauli_gadget(gates, pairs, index, -2.0)
    return Circuit(layout.num_qubits, tuple(gates), len(excitations))


def build_heuristic(kind: str, num_qubits: int, depth: int) -> Circuit:
    """Hardware-efficient blocks; pair entanglers for swaprz, CNOTs for ryrz.

    swaprz: depth+1 per-qubit RZ layers interleaved with depth entangler
    blocks, each applying exp(i theta (X_i X_j + Y_i Y_j)) to every pair
    i < j (4 CNOTs, one shared parameter per pair).  ryrz: depth+1 layers
    of per-qubit RY and RZ with all-pairs CNOT blocks in between.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    pairs = [(i, j) for i in range(num_qubits) for j in range(i + 1, num_qubits)]
    gates: list[Gate] = []
    param = 0

    def rotation_layer(kinds: tuple[str, ...]) -> None:
        nonlocal param
        for q in range(num_qubits):
            for k in kinds:
                gates.append(Gate(k, (q,), param=param))
                param += 1

    if kind == "swaprz":
        for _ in range(depth):
            rotation_layer(("rz",))
            for i, j in pairs:
                _append_pauli_gadget(gates, [(i, "X"), (j, "X")], param, -2.0)
                _append_pauli_gadget(gates, [(i, "Y"), (j, "Y")], param, -2.0)
                param += 1
        rotation_layer(("rz",))
    elif kind == "ryrz":
        for _ in range(depth):
            rotation_layer(("ry", "rz"))
            gates.extend(Gate("cnot", (i, j)) for i, j in pairs)
        rotation_layer(("ry", "rz"))
    else:
        raise ValueError(f"unknown heuristic kind {kind!r}")
    return Circuit(num_qubits, tuple(gates), param)


def count_resources(circuit: Circuit) -> dict[str, int]:
    """Exact CNOT, parameter and qubit counts by traversal."""
    cx = sum(1 for g in circuit.gates if g.kind == "cnot")
    return {"cx": cx, "params": circuit.num_parameters,
            "qubits": circuit.num_qubits}
