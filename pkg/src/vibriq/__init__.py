"""Vibrational anharmonic eigenstates via simulated variational quantum
algorithms: n-mode second quantization, direct modal-to-qubit mapping,
cluster and heuristic ansatz circuits, penalty-constrained ground-state
optimization, equation-of-motion excited states, stochastic depolarizing
noise, and a dense brute-force oracle."""

__version__ = "0.1.0"

from .pauli import PauliString, PauliSum, add_simplify, commutator, multiply
from .pes import (ModalBasis, ModalOperators, PesExpansion, PesTerm,
                  ho_q_power_matrix, load_pes, modal_operator_matrices,
                  modal_q_power_matrix, one_body_matrix, pes_from_dict,
                  pes_to_dict, save_pes, solve_modals)
from .mapping import (QubitLayout, SqTerm, build_sq_hamiltonian, map_to_pauli,
                      number_operator, penalty_objective)
from .circuits import (Circuit, Excitation, Gate, build_chc, build_heuristic,
                       build_uvcc, compose, count_resources, excitation_list,
                       generator_pauli, reference_circuit)
from .simulator import (NoiseModel, ShotCounts, StateVector, apply_circuit,
                        distribution_fidelity, expectation, expectation_value,
                        noisy_counts, noisy_trajectory, run_fidelity_experiment,
                        sample)
from .vqe import VqeConfig, VqeResult, build_ansatz, ground_state, minimize
from .qeom import (EomMatrices, EomOperators, build_eom_operators,
                   compute_matrices, double_commutator, excitation_energies,
                   solve_pseudo_eigenproblem)
from .exact import (PhysicalProjector, dense_matrix, ground_state_vector,
                    physical_spectrum)
