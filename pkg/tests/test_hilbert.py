from __future__ import annotations

import math

import numpy as np
import pytest

from catsim.engine import hilbert, qcore
from catsim.engine.hilbert import Operator, PureState, Slot, TruncationScheme
from catsim.errors import AmplitudeError, DimensionError, SignatureError


def test_truncation_defaults_cavity_guard():
    trunc = TruncationScheme(n_vib=25, n_cav=8)
    assert trunc.guard == 5
    assert trunc.cav_guard == 4
    assert trunc.total_dim == 400
    assert trunc.signature.dims == (25, 8, 2)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_vib": 1, "n_cav": 4},
        {"n_vib": 10, "n_cav": 4, "guard": 5},
        {"n_vib": 10, "n_cav": 4, "guard": 0},
        {"n_vib": 10, "n_cav": 4, "guard": 2, "cav_guard": 4},
        {"n_vib": 100, "n_cav": 11, "guard": 5},
    ],
)
def test_truncation_rejects_invalid_dims(kwargs):
    with pytest.raises(DimensionError):
        TruncationScheme(**kwargs)


def test_ladder_operators_satisfy_commutator_on_interior():
    a = hilbert.annihilation(12)
    commutator = a @ hilbert.creation(12) - hilbert.creation(12) @ a
    np.testing.assert_allclose(commutator[:-1, :-1], np.eye(11), atol=1e-12)
    np.testing.assert_allclose(hilbert.number(12), hilbert.creation(12) @ a, atol=1e-12)


def test_coherent_state_amplitudes():
    ket = hilbert.coherent_state(30, 0.5)
    assert abs(ket[0]) == pytest.approx(0.8825, abs=1e-4)
    assert abs(ket[1]) == pytest.approx(0.4412, abs=1e-4)
    assert np.linalg.norm(ket) == pytest.approx(1.0, abs=1e-12)


def test_coherent_state_rejects_large_amplitude():
    with pytest.raises(AmplitudeError):
        hilbert.coherent_state(10, 2.0, guard=2)


def test_displacement_of_vacuum_is_coherent_state():
    alpha = 0.4 - 0.3j
    displaced = hilbert.displacement(40, alpha) @ hilbert.fock_state(40, 0)
    np.testing.assert_allclose(displaced, hilbert.coherent_state(40, alpha), atol=1e-10)


def test_displacement_is_unitary_and_trivial_at_zero():
    d = hilbert.displacement(30, 0.25j)
    assert qcore.unitarity_error(d) <= 1e-9
    np.testing.assert_array_equal(hilbert.displacement(30, 0), np.eye(30))


def test_cos_position_is_identity_at_zero_eta():
    np.testing.assert_array_equal(hilbert.cos_position(15, 0.0), np.eye(15))


def test_cos_and_sin_of_position_square_to_one():
    cos = hilbert.cos_position(20, 0.7)
    sin = hilbert.sin_position(20, 0.7)
    np.testing.assert_allclose(cos @ cos + sin @ sin, np.eye(20), atol=1e-10)


def test_embed_places_qubit_operator_in_last_slot(small_trunc):
    op = hilbert.embed(hilbert.SIGMA_Z, Slot.QUBIT, small_trunc)
    diagonal = np.diag(op.matrix).real
    np.testing.assert_array_equal(diagonal[:4], [1, -1, 1, -1])


def test_product_state_index_ordering(small_trunc):
    state = hilbert.product_state(
        hilbert.fock_state(20, 2),
        hilbert.fock_state(4, 1),
        hilbert.qubit_ket(hilbert.QubitLevel.GROUND),
        small_trunc,
    )
    assert np.flatnonzero(state.amplitudes).tolist() == [(2 * 4 + 1) * 2 + 1]
    assert state.as_tensor()[2, 1, 1] == 1


def test_operator_and_state_are_read_only(small_trunc):
    op = Operator.identity(small_trunc.signature)
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 2
    state = hilbert.product_state(
        hilbert.fock_state(20, 0),
        hilbert.fock_state(4, 0),
        hilbert.qubit_ket(hilbert.QubitLevel.EXCITED),
        small_trunc,
    )
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0


def test_operator_rejects_signature_mismatch(small_trunc):
    other = TruncationScheme(n_vib=12, n_cav=4, guard=3)
    with pytest.raises(SignatureError):
        Operator.identity(small_trunc.signature) @ Operator.identity(other.signature)
    with pytest.raises(SignatureError):
        PureState(np.ones(3), small_trunc.signature)


def test_interior_indices_cover_interior_block(small_trunc):
    indices = hilbert.interior_indices(small_trunc)
    assert indices.size == (20 - 5) * (4 - 2) * 2
    vib, cav, _ = np.unravel_index(indices, small_trunc.signature.dims)
    assert vib.max() == 14
    assert cav.max() == 1


def test_interior_norm_ignores_guard_band(small_trunc):
    amplitudes = np.zeros(small_trunc.total_dim, dtype=complex)
    amplitudes[0] = 1 / math.sqrt(2)
    amplitudes[-1] = 1 / math.sqrt(2)
    state = PureState(amplitudes, small_trunc.signature)
    assert state.norm == pytest.approx(1.0)
    assert hilbert.interior_norm(state, small_trunc) == pytest.approx(1 / math.sqrt(2))


def test_annihilation_lowers_fock_states():
    a = hilbert.annihilation(10)
    np.testing.assert_allclose(a @ hilbert.fock_state(10, 1), hilbert.fock_state(10, 0))
    np.testing.assert_allclose(a @ hilbert.fock_state(10, 4), 2 * hilbert.fock_state(10, 3))


def test_fock_states_are_orthonormal_and_flag_guard_band():
    basis = np.array([hilbert.fock_state(10, n) for n in range(10)])
    np.testing.assert_array_equal(basis.conj() @ basis.T, np.eye(10))
    assert hilbert.guard_band_resident(10, 9)
    assert not hilbert.guard_band_resident(10, 4)
    with pytest.raises(DimensionError):
        hilbert.fock_state(10, 10)


def test_coherent_state_of_zero_is_vacuum():
    np.testing.assert_array_equal(hilbert.coherent_state(20, 0), hilbert.fock_state(20, 0))


def test_coherent_state_is_eigenstate_of_annihilation():
    alpha = 0.25j
    ket = hilbert.coherent_state(20, alpha)
    residual = hilbert.annihilation(20) @ ket - alpha * ket
    assert np.max(np.abs(residual[:-1])) <= 1e-8


def test_opposite_displacements_cancel_on_interior():
    product = hilbert.displacement(20, 0.3 + 0.2j) @ hilbert.displacement(20, -0.3 - 0.2j)
    np.testing.assert_allclose(product[:15, :15], np.eye(15), atol=1e-10)


def test_displaced_vacuum_fidelity():
    displaced = hilbert.displacement(20, 0.25j) @ hilbert.fock_state(20, 0)
    assert qcore.fidelity(displaced, hilbert.coherent_state(20, 0.25j)) >= 1 - 1e-10


def test_cos_position_spectrum_and_displacement_identity():
    cos = hilbert.cos_position(20, 0.5)
    assert qcore.hermiticity_error(cos) <= 1e-12
    eigenvalues = np.linalg.eigvalsh(cos)
    assert eigenvalues.min() >= -1 - 1e-12
    assert eigenvalues.max() <= 1 + 1e-12

    average = (hilbert.displacement(20, 0.5j) + hilbert.displacement(20, -0.5j)) / 2
    np.testing.assert_allclose(cos[:15, :15], average[:15, :15], atol=1e-9)


def test_embedded_ladder_acts_on_its_own_slot(small_trunc):
    lower = hilbert.embed(hilbert.annihilation(20), Slot.VIBRATION, small_trunc)
    excited = hilbert.qubit_ket(hilbert.QubitLevel.EXCITED)
    start = hilbert.product_state(hilbert.fock_state(20, 1), hilbert.fock_state(4, 0), excited, small_trunc)
    expected = hilbert.product_state(hilbert.fock_state(20, 0), hilbert.fock_state(4, 0), excited, small_trunc)

    np.testing.assert_allclose((lower @ start).amplitudes, expected.amplitudes)


def test_embedded_identity_and_mode_commutation(small_trunc):
    identity = hilbert.embed(np.eye(4), Slot.CAVITY, small_trunc)
    np.testing.assert_array_equal(identity.matrix, np.eye(small_trunc.total_dim))

    a = hilbert.embed(hilbert.annihilation(20), Slot.VIBRATION, small_trunc)
    b = hilbert.embed(hilbert.annihilation(4), Slot.CAVITY, small_trunc)
    np.testing.assert_array_equal((a @ b).matrix, (b @ a).matrix)


def test_embedded_number_spectrum_has_cavity_and_qubit_multiplicity(small_trunc):
    n_vib = hilbert.embed(hilbert.number(small_trunc.n_vib), Slot.VIBRATION, small_trunc)
    values, _ = qcore.herm_eig(n_vib.matrix)

    levels, counts = np.unique(np.round(values).astype(int), return_counts=True)
    np.testing.assert_allclose(values, np.round(values), atol=1e-10)
    np.testing.assert_array_equal(levels, np.arange(small_trunc.n_vib))
    np.testing.assert_array_equal(counts, np.full(small_trunc.n_vib, 2 * small_trunc.n_cav))
