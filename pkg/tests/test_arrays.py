import math
import warnings

import numpy as np
import pytest

from rxfront.core import (
    FrequencyGrid,
    ImpedanceMatrixSeries,
    NumericalError,
    SingularCircuitError,
    ValidationError,
)
from rxfront.arrays import (
    ArrayModel,
    TerminationStrategy,
    coupling_offdiag_ratio,
    full_conjugate_closed_form,
    make_synthetic_model,
    open_circuit_voltages,
    perturbation_sum_powers,
    sum_extracted_power,
    terminated_voltages,
    termination_matrix,
)


def _model(n_rx=3, seed=0, coupling=5.0):
    return make_synthetic_model(
        1, n_rx, 50 + 5j, coupling, 0.5, [1e6, 2e6], rng=np.random.default_rng(seed)
    )


def test_synthetic_model_shapes_and_validity():
    model = _model()
    assert model.zms.matrices.shape == (2, 4, 4)
    assert model.zms.dims == (1, 3)
    assert model.i_t.shape == (2, 1)
    assert open_circuit_voltages(model).shape == (2, 3)


def test_nonreciprocal_matrix_rejected():
    mats = np.array([[[50.0, 5.0, 1.0], [5.0, 50.0, 5.0], [1.1, 5.0, 50.0]]], dtype=complex)
    zms = ImpedanceMatrixSeries(FrequencyGrid([1e6]), mats, dims=(1, 2))
    with pytest.raises(ValidationError):
        ArrayModel(zms, np.ones(1, dtype=complex))


def test_nonpassive_matrix_rejected():
    mats = np.array([[[1.0, 60.0], [60.0, 1.0]]], dtype=complex)
    zms = ImpedanceMatrixSeries(FrequencyGrid([1e6]), mats, dims=(1, 1))
    with pytest.raises(ValidationError):
        ArrayModel(zms, np.ones(1, dtype=complex))


def test_open_circuit_voltages_are_transfer_times_current():
    model = _model()
    v_oc = open_circuit_voltages(model)
    want = np.einsum("fkm,fm->fk", model.zms.z_rt, model.i_t)
    assert np.array_equal(v_oc, want)


def test_open_circuit_termination_is_bit_exact_and_powerless():
    model = _model()
    strat = TerminationStrategy.open_circuit()
    v = terminated_voltages(model, strat)
    assert np.array_equal(v, open_circuit_voltages(model))
    p = sum_extracted_power(model, strat)
    assert p.tolist() == [0.0, 0.0]


def test_termination_matrix_kinds():
    z_r = np.array([[50 + 5j, 4 - 1j], [4 - 1j, 60 + 2j]])
    per = termination_matrix(TerminationStrategy.per_antenna_conjugate(), z_r)
    assert np.array_equal(per, np.diag([50 - 5j, 60 - 2j]))
    full = termination_matrix(TerminationStrategy.full_conjugate(), z_r)
    assert np.array_equal(full, np.conj(z_r))
    explicit = termination_matrix(
        TerminationStrategy.explicit(np.diag([75 + 0j, 75 + 0j])), z_r
    )
    assert np.array_equal(explicit, np.diag([75 + 0j, 75 + 0j]))


def test_explicit_strategy_shape_and_passivity_checks():
    model = _model(n_rx=2)
    wrong_shape = TerminationStrategy.explicit(np.diag([75 + 0j, 75 + 0j, 75 + 0j]))
    with pytest.raises(ValidationError):
        terminated_voltages(model, wrong_shape)
    active = TerminationStrategy.explicit(np.diag([-75 + 0j, 75 + 0j]))
    z_r = np.asarray(model.zms.z_r[0])
    with pytest.raises(ValidationError):
        termination_matrix(active, z_r)
    with pytest.raises(ValidationError):
        TerminationStrategy.explicit(np.array([[math.nan + 0j, 0], [0, 75 + 0j]]))
    with pytest.raises(ValidationError):
        TerminationStrategy("per_antenna_conjugate", np.eye(2, dtype=complex))
    with pytest.raises(ValidationError):
        TerminationStrategy("bogus_kind")


def test_full_conjugate_closed_form_matches_general_solve():
    for seed in (1, 2, 3):
        model = _model(n_rx=4, seed=seed)
        v_slow = terminated_voltages(model, TerminationStrategy.full_conjugate())
        for fi in range(2):
            z_r = np.asarray(model.zms.z_r[fi])
            v_fast = full_conjugate_closed_form(z_r, open_circuit_voltages(model)[fi])
            assert np.max(np.abs(v_fast - v_slow[fi])) <= 1e-10 * np.max(np.abs(v_slow[fi]))


def test_full_conjugate_extracts_available_power():
    # sum power under full conjugate equals (1/8) v_oc^H Re(Z_R)^-1 v_oc
    model = _model(n_rx=3, seed=4)
    p = sum_extracted_power(model, TerminationStrategy.full_conjugate())
    for fi in range(2):
        z_r = np.asarray(model.zms.z_r[fi])
        v_oc = open_circuit_voltages(model)[fi]
        want = 0.125 * np.real(np.conj(v_oc) @ np.linalg.solve(z_r.real, v_oc))
        assert math.isclose(p[fi], want, rel_tol=1e-10)


def test_full_conjugate_beats_per_antenna():
    for seed in range(5):
        model = _model(n_rx=4, seed=seed, coupling=8.0)
        p_fc = sum_extracted_power(model, TerminationStrategy.full_conjugate())
        p_pa = sum_extracted_power(model, TerminationStrategy.per_antenna_conjugate())
        assert np.all(p_fc >= p_pa * (1 - 1e-12))


def test_single_antenna_reduces_to_thevenin_formulas():
    model = make_synthetic_model(1, 1, 73 + 42.5j, 0.0, 0.5, [1e6])
    v_oc = open_circuit_voltages(model)[0, 0]
    p = sum_extracted_power(model, TerminationStrategy.full_conjugate())[0]
    assert math.isclose(p, abs(v_oc) ** 2 / (8 * 73.0), rel_tol=1e-12)
    v = terminated_voltages(model, TerminationStrategy.per_antenna_conjugate())[0, 0]
    want = v_oc * (73 - 42.5j) / (146.0)
    assert abs(v - want) <= 1e-12 * abs(want)


def test_perturbations_never_beat_full_conjugate():
    model = _model(n_rx=3, seed=6)
    z_r = np.asarray(model.zms.z_r[0])
    v_oc = open_circuit_voltages(model)[0]
    z_fc = termination_matrix(TerminationStrategy.full_conjugate(), z_r)
    rng = np.random.default_rng(7)
    eig_min = np.min(np.linalg.eigvalsh((z_r.real + z_r.real.T) / 2.0))
    raw = rng.standard_normal((200, 3, 3)) + 1j * rng.standard_normal((200, 3, 3))
    sym = (raw + np.transpose(raw, (0, 2, 1))) / 2.0
    scale = 0.4 * eig_min / np.abs(sym).sum(axis=(1, 2))[:, None, None]
    powers = perturbation_sum_powers(z_r, z_fc, v_oc, sym * scale)
    p_best = sum_extracted_power(model, TerminationStrategy.full_conjugate())[0]
    assert np.all(powers <= p_best * (1 + 1e-12))


def test_ill_conditioned_termination_warns():
    # z_r self resistances spread over 13 decades: conjugate termination
    # doubles them, leaving cond(Z_R + Z_L) ~ 1e13 past the warning bar
    mats = np.array([[
        [50.0 + 0j, 1e-8, 1e-8],
        [1e-8, 1e-13 + 0j, 0.0],
        [1e-8, 0.0, 1.0 + 0j],
    ]])
    zms = ImpedanceMatrixSeries(FrequencyGrid([1e6]), mats, dims=(1, 2))
    model = ArrayModel(zms, np.array([1 + 0j]))
    with pytest.warns(RuntimeWarning):
        terminated_voltages(model, TerminationStrategy.per_antenna_conjugate())


def test_current_vector_broadcasting():
    zms = _model(n_rx=2).zms
    flat = ArrayModel(zms, np.array([1 + 0j]))
    per_freq = ArrayModel(zms, np.array([[1 + 0j], [1 + 0j]]))
    assert np.array_equal(flat.i_t, per_freq.i_t)
    with pytest.raises(ValidationError):
        ArrayModel(zms, np.ones((3, 1), dtype=complex))


def test_offdiag_ratio_properties():
    model = _model(n_rx=3, seed=8)
    assert coupling_offdiag_ratio(model, TerminationStrategy.open_circuit()).tolist() == [0.0, 0.0]
    uncoupled = make_synthetic_model(1, 3, 50 + 5j, 0.0, 0.5, [1e6])
    r = coupling_offdiag_ratio(uncoupled, TerminationStrategy.per_antenna_conjugate())
    assert np.all(r == 0.0)
    coupled = coupling_offdiag_ratio(model, TerminationStrategy.per_antenna_conjugate())
    assert np.all(coupled > 0.0)


def test_synthetic_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        make_synthetic_model(0, 2, 50 + 5j, 1.0, 0.5, [1e6])
    with pytest.raises(ValidationError):
        make_synthetic_model(1, 2, -50 + 5j, 1.0, 0.5, [1e6])
    with pytest.raises(ValidationError):
        make_synthetic_model(1, 2, 50 + 5j, -1.0, 0.5, [1e6])
    with pytest.raises(ValidationError):
        make_synthetic_model(1, 2, 50 + 5j, 1.0, 1.5, [1e6])
