from __future__ import annotations

import math

import numpy as np
import pytest

from catsim.config import settings
from catsim.engine import hilbert, model, qcore
from catsim.engine.hilbert import TruncationScheme
from catsim.engine.model import SystemParams

# A guard band this wide keeps the interior block clear of truncation-edge effects up to eta = 1.5.
WIDE_TRUNC = TruncationScheme(n_vib=100, n_cav=3, guard=49)


@pytest.mark.parametrize("g", [0.0, 0.01])
@pytest.mark.parametrize("eta", [0.1, 0.5, 1.0, 1.5])
def test_transform_identity_holds_in_exact_form(eta, g):
    p = SystemParams(nu=1.0, omega=1.0, omega0=0.2, g=g, eta=eta)
    check = model.transform_check(p, WIDE_TRUNC)

    assert check.exact_ok, check.relative_residual_exact
    assert check.unitary_ok
    if g == 0:
        assert check.simplified_ok


@pytest.mark.parametrize(
    "eta, passes",
    [(0.1, True), (0.5, True), (1.0, False), (1.5, False)],
)
def test_transform_identity_at_default_dims(eta, passes):
    # Edge error of D N D^dag reaches the interior block of (25, 8) once eta >= 1.
    p = SystemParams(nu=1.0, omega=1.0, omega0=0.2, g=0.01, eta=eta)
    check = model.transform_check(p, TruncationScheme(n_vib=25, n_cav=8, guard=5))

    assert check.exact_ok == passes
    assert math.isfinite(check.relative_residual_exact)
    if passes:
        assert check.relative_residual_exact <= settings.TRANSFORM_REL_TOL
    else:
        assert settings.TRANSFORM_REL_TOL < check.relative_residual_exact < 0.1


def test_simplified_form_residual_is_reported_when_coupled():
    p = SystemParams(g=0.01, eta=1.0)
    check = model.transform_check(p, WIDE_TRUNC)

    assert check.relative_residual_simplified > settings.TRANSFORM_REL_TOL
    assert not check.simplified_ok
    assert check.residual_simplified > 100 * check.residual_exact


def test_transform_and_displacement_are_unitary(params, small_trunc):
    t = model.build_t(params, small_trunc)
    assert model.interior_unitarity_deviation(t, small_trunc) <= settings.INTERIOR_UNITARY_TOL
    assert qcore.unitarity_error(t.matrix) <= settings.UNITARY_TOL
    d = model.vib_displacement(params, small_trunc)
    assert qcore.unitarity_error(d) <= settings.UNITARY_TOL


def test_hamiltonians_are_hermitian(params, small_trunc):
    for build in (
        model.build_h_full,
        model.build_h_regime,
        model.build_h_transformed,
        model.build_h_transformed_exact,
    ):
        assert build(params, small_trunc).hermiticity_error <= settings.HERMITIAN_TOL


def test_transformed_minus_regime_is_cavity_coupling(params, small_trunc):
    difference = model.build_h_transformed(params, small_trunc) - model.build_h_regime(params, small_trunc)
    b = hilbert.annihilation(small_trunc.n_cav)
    coupling = hilbert.local_operator(small_trunc, cav=b + b.conj().T, qubit=hilbert.SIGMA_Z)

    np.testing.assert_array_equal(difference.matrix, params.g * coupling.matrix)


def test_regime_hamiltonian_has_energy_shift(small_trunc):
    p = SystemParams(eta=0.8, omega0=0.0)
    h = model.build_h_regime(p, small_trunc)
    assert h.matrix[0, 0].real == pytest.approx(p.nu * p.eta**2 / 4)


def test_regime_report_defaults(params):
    report = model.regime_report(params)
    assert report.ratio_drive == pytest.approx(100.0)
    assert report.ratio_ld == 0.5
    assert report.regime_ok
    assert report.beyond_ld


def test_regime_report_at_zero_coupling_and_custom_thresholds():
    report = model.regime_report(SystemParams(g=0.0, eta=0.2))
    assert math.isinf(report.ratio_drive)
    assert report.regime_ok
    assert not report.beyond_ld

    strict = model.regime_report(SystemParams(g=0.01, eta=0.2), ratio_threshold=50.0, ld_threshold=0.1)
    assert not strict.regime_ok
    assert strict.beyond_ld


@pytest.mark.parametrize("g", [0.0, 0.01])
def test_low_spectrum_is_preserved_by_transform(g):
    p = SystemParams(g=g, eta=0.5)
    assert model.spectrum_check(p, TruncationScheme(n_vib=30, n_cav=3, guard=10)) <= 1e-8


@pytest.mark.parametrize(
    "kwargs",
    [{"nu": 0.0}, {"g": -0.1}, {"eta": -1.0}, {"omega": math.nan}],
)
def test_system_params_validation(kwargs):
    with pytest.raises(ValueError):
        SystemParams(**kwargs)


def test_beta_is_imaginary_half_eta():
    assert SystemParams(eta=0.5).beta == 0.25j


def test_full_hamiltonian_limits(small_trunc):
    decoupled = model.build_h_full(SystemParams(g=0.0), small_trunc).matrix
    assert np.count_nonzero(decoupled - np.diag(np.diag(decoupled))) == 0
    assert decoupled[0, 0] == pytest.approx(0.1)

    p = SystemParams(g=0.01, eta=0.0)
    b = hilbert.annihilation(small_trunc.n_cav)
    coupling = hilbert.local_operator(small_trunc, cav=b + b.conj().T, qubit=hilbert.SIGMA_X)
    difference = model.build_h_full(p, small_trunc) - model.build_h_full(SystemParams(g=0.0, eta=0.0), small_trunc)
    np.testing.assert_allclose(difference.matrix, 0.01 * coupling.matrix, atol=1e-15)


def test_transform_without_recoil_is_qubit_rotation(small_trunc):
    t = model.build_t(SystemParams(eta=0.0), small_trunc)
    rotation = np.array([[1, 1], [-1, 1]]) / math.sqrt(2)
    np.testing.assert_allclose(t.matrix, hilbert.local_operator(small_trunc, qubit=rotation).matrix, atol=1e-15)


def test_transform_keeps_norm_of_vacuum_superposition(params, small_trunc):
    plus = (hilbert.qubit_ket(hilbert.QubitLevel.EXCITED) + hilbert.qubit_ket(hilbert.QubitLevel.GROUND)) / math.sqrt(2)
    state = hilbert.product_state(hilbert.fock_state(20, 0), hilbert.fock_state(4, 0), plus, small_trunc)
    assert (model.build_t(params, small_trunc) @ state).norm == pytest.approx(1.0, abs=1e-12)


def test_transformed_hamiltonian_without_recoil(small_trunc):
    p = SystemParams(g=0.01, eta=0.0)
    b = hilbert.annihilation(small_trunc.n_cav)
    expected = (
        hilbert.local_operator(small_trunc, vib=hilbert.number(20))
        + hilbert.local_operator(small_trunc, cav=hilbert.number(4))
        + 0.01 * hilbert.local_operator(small_trunc, cav=b + b.conj().T, qubit=hilbert.SIGMA_Z)
        - 0.1 * hilbert.local_operator(small_trunc, qubit=hilbert.SIGMA_X)
    )
    np.testing.assert_allclose(model.build_h_transformed(p, small_trunc).matrix, expected.matrix, atol=1e-15)


@pytest.mark.parametrize("eta", [0.1, 0.5, 1.0])
def test_transformed_hamiltonian_is_hermitian(eta, small_trunc):
    h = model.build_h_transformed(SystemParams(g=0.01, eta=eta), small_trunc)
    assert h.hermiticity_error <= 1e-10


def test_regime_and_transformed_coincide_without_coupling(small_trunc):
    p = SystemParams(g=0.0)
    np.testing.assert_array_equal(
        model.build_h_regime(p, small_trunc).matrix,
        model.build_h_transformed(p, small_trunc).matrix,
    )


def test_regime_report_flags_strong_coupling():
    report = model.regime_report(SystemParams(g=0.05, eta=0.5))
    assert report.ratio_drive == pytest.approx(10.0)
    assert not report.regime_ok
