"""Ground-state minimization of the (optionally penalty-augmented) energy.

The default optimizer is a derivative-free simplex with restarts: each
restart rebuilds a fresh simplex around the best point found so far,
which recovers from the stalls simplex methods hit on higher-dimensional
penalty landscapes.  A simultaneous-perturbation optimizer is available
for noisy objectives.  Convergence is declared when the best objective
value stops improving by more than the tolerance over a trailing
evaluation window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .circuits import (Circuit, build_chc, build_heuristic, build_uvcc,
                       compose, excitation_list, reference_circuit)
from .mapping import QubitLayout, number_operator, penalty_objective
from .pauli import PauliSum
from .simulator import apply_circuit, expectation

ANSATZ_KINDS = ("uvccsd", "chc", "swaprz", "ryrz")
DEFAULT_PENALTY_WEIGHT = 1e5


@dataclass(frozen=True)
class VqeConfig:
    ansatz: str = "uvccsd"
    depth: int = 1
    trotter_steps: int = 1
    optimizer: str = "nelder-mead"
    max_evals: int = 200_000
    tol: float = 1e-8
    window: int | None = None
    restarts: int = 12
    init_range: tuple[float, float] = (-0.2, 0.2)
    mu: float | None = None
    seed: int = 0
    initial_params: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.ansatz not in ANSATZ_KINDS:
            raise ValueError(f"unknown ansatz {self.ansatz!r}")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.init_range[0] > self.init_range[1]:
            raise ValueError("initial-parameter range bounds must be ordered")

    def effective_mu(self) -> float:
        """Penalty defaults to 1e5 for the occupation-breaking heuristics."""
        if self.mu is not None:
            return self.mu
        return DEFAULT_PENALTY_WEIGHT if self.ansatz in ("swaprz", "ryrz") else 0.0

    def effective_window(self, dimension: int) -> int:
        """Stagnation window; grows with dimension because a simplex can
        stall for far more than 50 evaluations on larger parameter sets."""
        if self.window is not None:
            return self.window
        return max(50, 25 * dimension)


@dataclass
class VqeResult:
    energy: float
    params: np.ndarray
    history: list[float]
    evals: int
    seed: int

    def to_dict(self) -> dict:
        return {"energy": self.energy,
                "params": [float(p) for p in self.params],
                "history": [float(v) for v in self.history],
                "evals": self.evals,
                "seed": self.seed}


class _Converged(Exception):
    pass


class _Tracker:
    """Records accepted (improving) values and stops on window stagnation."""

    def __init__(self, objective: Callable, tol: float, window: int,
                 max_evals: int):
        self._objective = objective
        self._tol = tol
        self._window = max(2, window)
        self._max_evals = max_evals
        self.evals = 0
        self.best_value = np.inf
        self.best_params: np.ndarray | None = None
        self.history: list[float] = []
        self._best_trace: list[float] = []

    def __call__(self, params: np.ndarray) -> float:
        if self.evals >= self._max_evals:
            raise _Converged
        value = float(self._objective(np.asarray(params, dtype=float)))
        if not np.isfinite(value):
            raise RuntimeError(
                f"objective returned non-finite value {value!r} at "
                f"parameters {np.asarray(params).tolist()}")
        self.evals += 1
        if value < self.best_value:
            self.best_value = value
            self.best_params = np.array(params, dtype=float)
            self.history.append(value)
        self._best_trace.append(self.best_value)
        if len(self._best_trace) > self._window:
            gain = self._best_trace[-self._window - 1] - self.best_value
            if gain <= self._tol:
                raise _Converged
        return value

    def reset_window(self) -> None:
        self._best_trace.clear()


def _run_nelder_mead(tracker: _Tracker, start: np.ndarray,
                     config: VqeConfig) -> None:
    current = start
    previous_best = np.inf
    for _ in range(max(1, config.restarts)):
        tracker.reset_window()
        try:
            optimize.minimize(
                tracker, current, method="Nelder-Mead",
                options={"maxfev": config.max_evals,
                         "maxiter": config.max_evals,
                         "xatol": 1e-10, "fatol": 1e-12,
                         "adaptive": len(current) >= 6})
        except _Converged:
            pass
        if tracker.best_params is None:
            break
        current = tracker.best_params
        if previous_best - tracker.best_value <= config.tol:
            break
        previous_best = tracker.best_value


def _run_spsa(tracker: _Tracker, start: np.ndarray, config: VqeConfig) -> None:
    """Standard decaying-gain SPSA; each iteration costs two evaluations."""
    rng = np.random.default_rng(np.random.SeedSequence((config.seed, 0x5B5A)))
    theta = np.array(start, dtype=float)
    iterations = config.max_evals // 2
    a, c, big_a = 0.2, 0.1, 0.1 * iterations
    alpha, gamma = 0.602, 0.101
    try:
        tracker(theta)
        for k in range(iterations):
            ak = a / (k + 1 + big_a) ** alpha
            ck = c / (k + 1) ** gamma
            delta = rng.choice((-1.0, 1.0), size=theta.size)
            plus = tracker(theta + ck * delta)
            minus = tracker(theta - ck * delta)
            theta = theta - ak * (plus - minus) / (2.0 * ck) * (1.0 / delta)
    except _Converged:
        pass


def minimize(objective: Callable[[np.ndarray], float], start: Sequence[float],
             config: VqeConfig | None = None) -> VqeResult:
    """Derivative-free minimization with accepted-value history."""
    config = config or VqeConfig()
    if config.optimizer not in ("nelder-mead", "spsa"):
        raise ValueError(f"unknown optimizer {config.optimizer!r}")
    start = np.asarray(start, dtype=float)
    tracker = _Tracker(objective, config.tol,
                       config.effective_window(start.size), config.max_evals)
    try:
        tracker(start)
    except _Converged:
        pass
    if config.optimizer == "nelder-mead":
        _run_nelder_mead(tracker, start, config)
    else:
        _run_spsa(tracker, start, config)
    return VqeResult(energy=tracker.best_value,
                     params=tracker.best_params,
                     history=tracker.history,
                     evals=tracker.evals,
                     seed=config.seed)


def build_ansatz(layout: QubitLayout, config: VqeConfig) -> Circuit:
    """Ansatz circuit including the reference-state preparation."""
    if config.ansatz in ("uvccsd", "chc"):
        excitations = excitation_list(layout, 2)
        if config.ansatz == "uvccsd":
            return build_uvcc(layout, excitations, config.trotter_steps)
        return build_chc(layout, excitations)
    heuristic = build_heuristic(config.ansatz, layout.num_qubits, config.depth)
    return compose(reference_circuit(layout), heuristic)


def ground_state(hamiltonian: PauliSum, layout: QubitLayout,
                 config: VqeConfig | None = None) -> VqeResult:
    """Penalty-aware VQE on exact statevector expectations (noise-free)."""
    config = config or VqeConfig()
    if hamiltonian.num_qubits != layout.num_qubits:
        raise ValueError("Hamiltonian and layout disagree on the qubit count")
    circuit = build_ansatz(layout, config)
    mu = config.effective_mu()
    number_ops = [number_operator(layout, l) for l in range(layout.num_modes)] \
        if mu > 0 else []

    def objective(params: np.ndarray) -> float:
        state = apply_circuit(circuit, params)
        energy = expectation(state, hamiltonian)
        if mu > 0:
            occupations = [expectation(state, op) for op in number_ops]
            return penalty_objective(energy, occupations, mu)
        return energy

    if config.initial_params is not None:
        start = np.asarray(config.initial_params, dtype=float)
        if start.shape != (circuit.num_parameters,):
            raise ValueError(f"expected {circuit.num_parameters} initial "
                             f"parameters, got {start.shape}")
    else:
        rng = np.random.default_rng(config.seed)
        lo, hi = config.init_range
        start = rng.uniform(lo, hi, size=circuit.num_parameters)
    return minimize(objective, start, config)


def mode_occupations(hamiltonian_layout: QubitLayout, circuit: Circuit,
                     params: Sequence[float]) -> list[float]:
    """Per-mode occupation expectations of the prepared state."""
    state = apply_circuit(circuit, params)
    return [expectation(state, number_operator(hamiltonian_layout, l))
            for l in range(hamiltonian_layout.num_modes)]
