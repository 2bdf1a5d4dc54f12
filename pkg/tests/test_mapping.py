import numpy as np
import pytest

from helpers import dense_from_sum, onv_rule_matrix, physical_onvs, \
    random_sq_hamiltonian
from vibriq.mapping import (QubitLayout, SqTerm, build_sq_hamiltonian,
                            map_to_pauli, number_operator, penalty_objective,
                            sq_terms_from_records, sq_terms_to_records)
from vibriq.pes import (PesExpansion, PesTerm, modal_operator_matrices,
                        solve_modals)


def test_layout_offsets_and_total():
    layout = QubitLayout((2, 3, 4))
    assert layout.offsets == (0, 2, 5)
    assert layout.num_qubits == 9
    assert layout.qubit_index(1, 2) == 4
    with pytest.raises(ValueError):
        layout.qubit_index(1, 3)
    with pytest.raises(ValueError):
        QubitLayout((2, 0))


def test_sq_term_invariants():
    SqTerm(1.0, ((0, 1, 0), (2, 0, 1)))
    with pytest.raises(ValueError):
        SqTerm(1.0, ((1, 0, 0), (0, 1, 1)))  # modes must increase
    with pytest.raises(ValueError):
        SqTerm(1.0, ((0, 0, 0), (0, 1, 1)))  # duplicate mode


def _operators(pes, counts, dim=30):
    basis = solve_modals(pes, counts, dim=dim)
    return modal_operator_matrices(basis, pes)


def test_single_harmonic_mode_terms():
    pes = PesExpansion((1000.0,))
    terms = build_sq_hamiltonian(pes, _operators(pes, [2]), n_body=1)
    got = {t.factors: t.coefficient for t in terms}
    assert set(got) == {((0, 0, 0),), ((0, 1, 1),)}
    assert abs(got[((0, 0, 0),)] - 500.0) < 1e-9
    assert abs(got[((0, 1, 1),)] - 1500.0) < 1e-9


def test_no_coupling_terms_without_anharmonicity():
    pes = PesExpansion((1000.0, 1200.0, 900.0))
    terms = build_sq_hamiltonian(pes, _operators(pes, [2, 2, 2]))
    assert all(t.order == 1 for t in terms)


def test_bilinear_coupling_matches_kronecker_oracle():
    # cubic one-mode terms make every modal <k|Q|h> element nonzero,
    # so the coupling expands into the full 16-term block
    c = 7.5
    pes = PesExpansion((1000.0, 1400.0),
                       (PesTerm(c, {0: 1, 1: 1}),
                        PesTerm(9.0, {0: 3}), PesTerm(-6.0, {1: 3})))
    ops = _operators(pes, [2, 2])
    terms = build_sq_hamiltonian(pes, ops)
    two_body = [t for t in terms if t.order == 2]
    assert len(two_body) == 16

    # independent oracle: H = h0 x I + I x h1 + c q0 x q1 on the modal
    # product basis, mode 0 varying fastest
    h0, h1 = np.diag(ops.one_body[0].diagonal()), np.diag(ops.one_body[1].diagonal())
    q0, q1 = ops.q_powers[0][1], ops.q_powers[1][1]
    eye = np.eye(2)
    oracle = np.kron(eye, h0) + np.kron(h1, eye) + c * np.kron(q1, q0)
    np.testing.assert_allclose(onv_rule_matrix(terms, QubitLayout((2, 2))),
                               oracle, atol=1e-12)


def test_projector_to_occupied_modal():
    layout = QubitLayout((1,))
    op = map_to_pauli([SqTerm(1.0, ((0, 0, 0),))], layout)
    np.testing.assert_allclose(dense_from_sum(op), np.diag([0.0, 1.0]),
                               atol=1e-14)


def test_transfer_operator_dense_action():
    layout = QubitLayout((2,))
    op = map_to_pauli([SqTerm(1.0, ((0, 1, 0),))], layout)
    labels = {t.label: t.coefficient for t in op.terms}
    assert labels == pytest.approx({"XX": 0.25, "YY": 0.25,
                                    "YX": 0.25j, "XY": -0.25j})
    dense = dense_from_sum(op)
    expected = np.zeros((4, 4), dtype=complex)
    expected[2, 1] = 1.0  # |modal 1 occupied> <- |modal 0 occupied|
    np.testing.assert_allclose(dense, expected, atol=1e-14)


def test_hermitian_pair_has_real_coefficients():
    layout = QubitLayout((2,))
    op = map_to_pauli([SqTerm(1.0, ((0, 1, 0),)), SqTerm(1.0, ((0, 0, 1),))],
                      layout)
    assert op.is_hermitian(1e-14)
    assert {t.label: t.coefficient for t in op.terms} == \
        pytest.approx({"XX": 0.5, "YY": 0.5})


def test_mapping_of_hermitian_term_list_is_real(coupled_system):
    _, terms, hamiltonian = coupled_system
    assert hamiltonian.is_hermitian(1e-10)


def test_mapped_hamiltonian_matches_onv_rules_on_random_inputs():
    rng = np.random.default_rng(41)
    for counts in [(2, 2), (3, 2), (2, 2, 2), (4, 3)]:
        layout = QubitLayout(counts)
        terms = random_sq_hamiltonian(rng, layout)
        dense = dense_from_sum(map_to_pauli(terms, layout))
        onvs = physical_onvs(layout)
        idx = [sum(1 << (layout.offsets[l] + k) for l, k in enumerate(onv))
               for onv in onvs]
        restricted = dense[np.ix_(idx, idx)]
        np.testing.assert_allclose(restricted, onv_rule_matrix(terms, layout),
                                   atol=1e-12)


def test_number_operator_forms():
    layout = QubitLayout((2, 2))
    op = number_operator(layout, 0)
    assert {t.label: t.coefficient for t in op.terms} == \
        pytest.approx({"IIII": 1.0, "ZIII": -0.5, "IZII": -0.5})
    dense = dense_from_sum(op)
    reference_index = 0b0101  # qubits 0 and 2 set
    assert dense[reference_index, reference_index] == pytest.approx(1.0)
    assert dense[0, 0] == pytest.approx(0.0)


def test_penalty_objective_arithmetic():
    assert penalty_objective(-12.5, [1.0, 1.0], 1e5) == pytest.approx(-12.5)
    assert penalty_objective(3.0, [0.0, 0.0], 1e5) == pytest.approx(3.0 + 2e5)
    assert penalty_objective(3.0, [0.3, 1.9], 0.0) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        penalty_objective(0.0, [1.0], -1.0)


def test_truncation_order_violation_is_hard_error():
    pes = PesExpansion((100.0, 110.0, 120.0),
                       (PesTerm(1.0, {0: 1, 1: 1, 2: 1}),))
    ops = _operators(pes, [2, 2, 2])
    with pytest.raises(ValueError, match="truncation"):
        build_sq_hamiltonian(pes, ops, n_body=2)
    terms = build_sq_hamiltonian(pes, ops, n_body=3)
    assert any(t.order == 3 for t in terms)


def test_three_body_mapping_matches_onv_rules():
    pes = PesExpansion((100.0, 110.0, 120.0),
                       (PesTerm(2.0, {0: 1, 1: 1, 2: 1}),))
    ops = _operators(pes, [2, 2, 2])
    terms = build_sq_hamiltonian(pes, ops, n_body=3)
    layout = QubitLayout((2, 2, 2))
    dense = dense_from_sum(map_to_pauli(terms, layout))
    onvs = physical_onvs(layout)
    idx = [sum(1 << (layout.offsets[l] + k) for l, k in enumerate(onv))
           for onv in onvs]
    np.testing.assert_allclose(dense[np.ix_(idx, idx)],
                               onv_rule_matrix(terms, layout), atol=1e-12)


def test_modal_index_out_of_layout_range():
    layout = QubitLayout((2,))
    with pytest.raises(ValueError):
        map_to_pauli([SqTerm(1.0, ((0, 2, 0),))], layout)


def test_sq_records_roundtrip():
    terms = [SqTerm(1.5, ((0, 1, 0),)), SqTerm(-0.25, ((0, 0, 1), (1, 1, 1)))]
    again = sq_terms_from_records(sq_terms_to_records(terms))
    assert again == terms
