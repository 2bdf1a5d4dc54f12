import numpy as np
import pytest
from scipy import linalg

from helpers import dense_from_sum, random_pauli_sum
from vibriq.exact import ground_state_vector, physical_spectrum
from vibriq.pauli import PauliSum
from vibriq.qeom import (EomOperators, build_eom_operators, compute_matrices,
                         double_commutator, excitation_energies,
                         solve_pseudo_eigenproblem)


def test_double_commutator_of_commuting_operators_vanishes():
    a = PauliSum.from_label("XI")
    h = PauliSum.from_label("IZ")
    b = PauliSum.from_label("XX")  # commutes with both? X0 yes, check via result
    z = double_commutator(a, PauliSum.identity(2), b)
    assert len(z) == 0
    z2 = double_commutator(a, a, a)
    assert len(z2) == 0


def test_double_commutator_single_qubit_case():
    x = PauliSum.from_label("X")
    z = PauliSum.from_label("Z")
    got = double_commutator(x, z, x)
    dx, dz = dense_from_sum(x), dense_from_sum(z)

    def comm(a, b):
        return a @ b - b @ a

    expected = 0.5 * (comm(comm(dx, dz), dx) + comm(dx, comm(dz, dx)))
    np.testing.assert_allclose(dense_from_sum(got), expected, atol=1e-12)
    assert got == PauliSum.from_label("Z", -4.0)


def test_double_commutator_matches_dense_on_random_sums():
    rng = np.random.default_rng(61)
    for _ in range(8):
        a = random_pauli_sum(rng, 3, 4)
        h = random_pauli_sum(rng, 3, 4, hermitian=True)
        b = random_pauli_sum(rng, 3, 4)
        da, dh, db = (dense_from_sum(s) for s in (a, h, b))

        def comm(x, y):
            return x @ y - y @ x

        expected = 0.5 * (comm(comm(da, dh), db) + comm(da, comm(dh, db)))
        np.testing.assert_allclose(dense_from_sum(double_commutator(a, h, b)),
                                   expected, atol=1e-10)


def test_double_commutator_adjoint_symmetry():
    rng = np.random.default_rng(67)
    h = random_pauli_sum(rng, 3, 5, hermitian=True)
    a = random_pauli_sum(rng, 3, 3)
    b = random_pauli_sum(rng, 3, 3)
    left = dense_from_sum(double_commutator(a, h, b))
    right = dense_from_sum(double_commutator(b.adjoint(), h, a.adjoint()))
    np.testing.assert_allclose(left.conj().T, right, atol=1e-10)


def test_eom_operator_adjoints_are_conjugate_transposes():
    from vibriq.mapping import QubitLayout
    ops = build_eom_operators(QubitLayout((2, 2)), 2)
    assert ops.size == 3
    for op, dag in zip(ops.operators, ops.adjoints):
        np.testing.assert_allclose(dense_from_sum(dag),
                                   dense_from_sum(op).conj().T, atol=1e-13)


def test_harmonic_matrices_and_energies(harmonic_system):
    layout, _, h = harmonic_system
    _, ground = ground_state_vector(h, layout)
    ops = build_eom_operators(layout, 2)
    mats = compute_matrices(ground, h, ops)
    np.testing.assert_allclose(mats.v, np.eye(3), atol=1e-10)
    np.testing.assert_allclose(mats.w, np.zeros((3, 3)), atol=1e-10)
    np.testing.assert_allclose(mats.m, np.diag([1000.0, 1500.0, 2500.0]),
                               atol=1e-8)
    energies = solve_pseudo_eigenproblem(mats)
    np.testing.assert_allclose(energies, [1000.0, 1500.0, 2500.0], atol=1e-8)


def test_matrices_hermitian_for_exact_ground(coupled_system):
    layout, _, h = coupled_system
    _, ground = ground_state_vector(h, layout)
    mats = compute_matrices(ground, h, build_eom_operators(layout, 2))
    np.testing.assert_allclose(mats.m, mats.m.conj().T, atol=1e-10)
    np.testing.assert_allclose(mats.v, mats.v.conj().T, atol=1e-10)


def test_coupled_system_matches_exact_gaps(coupled_system):
    layout, _, h = coupled_system
    _, ground = ground_state_vector(h, layout)
    energies, mats, ops = excitation_energies(ground, h, layout)
    spectrum = physical_spectrum(h, layout)
    np.testing.assert_allclose(energies, spectrum[1:] - spectrum[0],
                               atol=1e-6)
    assert ops.size == 3


def test_spectrum_comes_in_plus_minus_pairs(coupled_system):
    layout, _, h = coupled_system
    _, ground = ground_state_vector(h, layout)
    mats = compute_matrices(ground, h, build_eom_operators(layout, 2))
    a = np.block([[mats.m, mats.q], [np.conj(mats.q), np.conj(mats.m)]])
    b = np.block([[mats.v, mats.w], [-np.conj(mats.w), -np.conj(mats.v)]])
    values = np.sort(linalg.eigvals(a, b).real)
    np.testing.assert_allclose(values, -values[::-1], atol=1e-8)


def test_energies_scale_linearly_with_hamiltonian(coupled_system):
    layout, _, h = coupled_system
    _, ground = ground_state_vector(h, layout)
    base, _, _ = excitation_energies(ground, h, layout)
    scaled, _, _ = excitation_energies(ground, h * 3.0, layout)
    np.testing.assert_allclose(scaled, 3.0 * base, atol=1e-8)


def test_singular_metric_reports_null_dimension(coupled_system):
    layout, _, h = coupled_system
    _, ground = ground_state_vector(h, layout)
    ops = build_eom_operators(layout, 2)
    duplicated = EomOperators(ops.excitations + (ops.excitations[0],),
                              ops.operators + (ops.operators[0],),
                              ops.adjoints + (ops.adjoints[0],))
    mats = compute_matrices(ground, h, duplicated)
    with pytest.raises(ValueError, match="near-null subspace dimension"):
        solve_pseudo_eigenproblem(mats)


def test_threshold_filters_small_eigenvalues(harmonic_system):
    layout, _, h = harmonic_system
    _, ground = ground_state_vector(h, layout)
    mats = compute_matrices(ground, h, build_eom_operators(layout, 2))
    energies = solve_pseudo_eigenproblem(mats, threshold=1200.0)
    np.testing.assert_allclose(energies, [1500.0, 2500.0], atol=1e-8)
