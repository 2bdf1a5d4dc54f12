"""n-mode second quantization and the direct modal-to-qubit mapping.

One qubit per modal, mode registers concatenated in mode order, modal 0
(lowest energy) first within each register.  Qubit value 1 means the modal
is occupied; the reference configuration occupies modal 0 of every mode.
Creation maps to (X - iY)/2 and annihilation to (X + iY)/2 so the ladder
action on occupation-number vectors is reproduced exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .pauli import PauliSum
from .pes import ModalOperators, PesExpansion

COEFF_DROP_TOL = 1e-12


@dataclass(frozen=True)
class QubitLayout:
    """Assignment of one qubit per modal, grouped into mode registers."""

    modal_counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(n) for n in self.modal_counts)
        object.__setattr__(self, "modal_counts", counts)
        if not counts or any(n < 1 for n in counts):
            raise ValueError("every mode needs at least one modal")
        offsets = []
        total = 0
        for n in counts:
            offsets.append(total)
            total += n
        object.__setattr__(self, "_offsets", tuple(offsets))
        object.__setattr__(self, "_num_qubits", total)

    @property
    def num_modes(self) -> int:
        return len(self.modal_counts)

    @property
    def offsets(self) -> tuple[int, ...]:
        return self._offsets

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    def qubit_index(self, mode: int, modal: int) -> int:
        if not 0 <= mode < self.num_modes:
            raise ValueError(f"mode {mode} out of range")
        if not 0 <= modal < self.modal_counts[mode]:
            raise ValueError(f"modal {modal} out of range for mode {mode}")
        return self.offsets[mode] + modal

    def register(self, mode: int) -> range:
        off = self.offsets[mode]
        return range(off, off + self.modal_counts[mode])


@dataclass(frozen=True)
class SqTerm:
    """coefficient * prod over factors (mode, create-modal, annihilate-modal).

    At most one factor per mode, modes strictly increasing.
    """

    coefficient: float
    factors: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        factors = tuple((int(l), int(k), int(h)) for l, k, h in self.factors)
        object.__setattr__(self, "factors", factors)
        modes = [l for l, _, _ in factors]
        if modes != sorted(set(modes)):
            raise ValueError("factor modes must be distinct and increasing")

    @property
    def order(self) -> int:
        return len(self.factors)


def build_sq_hamiltonian(pes: PesExpansion, operators: ModalOperators,
                         n_body: int = 2) -> list[SqTerm]:
    """Expand the Hamiltonian into transfer-operator products.

    The one-body block carries the full T + V^(l) modal matrices; every
    coupling term contributes the tensor product of its per-mode coordinate
    matrices.  The result is Hermitian as a whole because the underlying
    matrices are symmetric.
    """
    if n_body < 1:
        raise ValueError("n_body must be >= 1")
    over = [t for t in pes.coupling_terms() if t.order > n_body]
    if over:
        raise ValueError(
            f"PES contains a {over[0].order}-mode coupling term but the "
            f"truncation order is {n_body}")
    counts = operators.modal_counts
    merged: dict[tuple[tuple[int, int, int], ...], float] = {}

    def accumulate(factors, coeff):
        if abs(coeff) <= COEFF_DROP_TOL:
            return
        merged[factors] = merged.get(factors, 0.0) + coeff

    for mode in range(pes.num_modes):
        h = operators.one_body[mode]
        for k in range(counts[mode]):
            for hh in range(counts[mode]):
                accumulate(((mode, k, hh),), float(h[k, hh]))

    for term in pes.coupling_terms():
        modes = term.modes
        mats = [operators.q_powers[m][term.powers[m]] for m in modes]
        index_grids = [[(k, h) for k in range(counts[m]) for h in range(counts[m])]
                       for m in modes]
        stack = [((), 1.0)]
        for m, mat, grid in zip(modes, mats, index_grids):
            stack = [(partial + ((m, k, h),), weight * float(mat[k, h]))
                     for partial, weight in stack
                     for k, h in grid]
        for factors, weight in stack:
            accumulate(factors, term.coefficient * weight)

    return [SqTerm(c, f) for f, c in merged.items() if abs(c) > COEFF_DROP_TOL]


def _ladder_sum(layout: QubitLayout, qubit: int, create: bool) -> PauliSum:
    n = layout.num_qubits
    x = "I" * qubit + "X" + "I" * (n - qubit - 1)
    y = "I" * qubit + "Y" + "I" * (n - qubit - 1)
    sign = -0.5j if create else 0.5j
    return PauliSum(n, [(x, 0.5), (y, sign)])


def map_to_pauli(terms: Iterable[SqTerm], layout: QubitLayout) -> PauliSum:
    """Direct mapping of transfer-operator products to a Pauli sum."""
    n = layout.num_qubits
    total = PauliSum.zero(n)
    for term in terms:
        op = PauliSum.identity(n, term.coefficient)
        for mode, k, h in term.factors:
            qc = layout.qubit_index(mode, k)
            qa = layout.qubit_index(mode, h)
            if qc == qa:
                # a+_k a_k = (I - Z_k)/2, the occupation projector
                z = "I" * qc + "Z" + "I" * (n - qc - 1)
                factor = PauliSum(n, [("I" * n, 0.5), (z, -0.5)])
            else:
                factor = _ladder_sum(layout, qc, create=True) \
                    * _ladder_sum(layout, qa, create=False)
            op = op * factor
        total = total.add(op)
    return total


def number_operator(layout: QubitLayout, mode: int) -> PauliSum:
    """Total occupation of one mode register: sum_k (I - Z_k)/2."""
    n = layout.num_qubits
    coeffs: dict[str, complex] = {"I" * n: 0.5 * layout.modal_counts[mode]}
    for q in layout.register(mode):
        coeffs["I" * q + "Z" + "I" * (n - q - 1)] = -0.5
    return PauliSum(n, coeffs)


def penalty_objective(h_expectation: float,
                      number_expectations: Sequence[float],
                      mu: float) -> float:
    """<H> + mu * sum_l (<N_l> - 1)^2, the cost-function form of the penalty.

    The squared deviation is taken on expectation values, not operators,
    which differs on superpositions of occupation sectors.
    """
    if mu < 0:
        raise ValueError("penalty weight must be nonnegative")
    return float(h_expectation) + mu * sum((float(n) - 1.0) ** 2
                                           for n in number_expectations)


# -- JSON interchange --------------------------------------------------------

def sq_terms_to_records(terms: Iterable[SqTerm]) -> list[dict]:
    return [{"coeff": t.coefficient, "factors": [list(f) for f in t.factors]}
            for t in terms]


def sq_terms_from_records(records: Iterable[Mapping]) -> list[SqTerm]:
    return [SqTerm(float(r["coeff"]),
                   tuple(tuple(f) for f in r["factors"]))
            for r in records]
