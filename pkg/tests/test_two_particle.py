import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctqw import two_particle as tp

CP = (-np.pi / 2, np.pi / 2)


def test_boson_cp_values():
    assert abs(tp.boson_amplitude(*CP, -4.0) - 1j) < 1e-14
    assert abs(tp.boson_amplitude(*CP, +4.0) + 1j) < 1e-14


def test_fermion_cp_values():
    assert abs(tp.fermion_amplitude(*CP, -2.0) - 1j) < 1e-14
    assert abs(tp.fermion_amplitude(*CP, +2.0) + 1j) < 1e-14


def test_free_amplitudes_are_one():
    assert abs(tp.boson_amplitude(-1.1, 0.7, 0.0) - 1.0) < 1e-15
    assert abs(tp.fermion_amplitude(-1.1, 0.7, 0.0) - 1.0) < 1e-15


angles0 = st.floats(min_value=-np.pi + 0.05, max_value=-0.05)
angles1 = st.floats(min_value=0.05, max_value=np.pi - 0.05)
us = st.floats(min_value=-8.0, max_value=8.0)


@settings(max_examples=60, deadline=None)
@given(angles0, angles1, us)
def test_amplitudes_unimodular(k0, k1, u):
    assert abs(abs(tp.boson_amplitude(k0, k1, u)) - 1.0) < 1e-13
    assert abs(abs(tp.fermion_amplitude(k0, k1, u)) - 1.0) < 1e-13


def test_effective_length_boson():
    assert abs(tp.two_particle_effective_length(tp.BOSON, -4.0)) < 1e-5
    assert abs(tp.two_particle_effective_length(tp.BOSON, +4.0)) < 1e-5


def test_effective_length_fermion():
    assert abs(tp.two_particle_effective_length(tp.FERMION, -2.0) + 0.5) < 1e-5
    assert abs(tp.two_particle_effective_length(tp.FERMION, +2.0) + 0.5) < 1e-5


def test_eigenstate_residual_cp_points():
    assert tp.verify_two_particle_eigenstate(40, *CP, -4.0, tp.BOSON) < 1e-10
    assert tp.verify_two_particle_eigenstate(40, *CP, -2.0, tp.FERMION) < 1e-10


def test_eigenstate_residual_free():
    assert tp.verify_two_particle_eigenstate(40, -1.0, 0.8, 0.0, tp.BOSON) < 1e-12
    assert tp.verify_two_particle_eigenstate(40, -1.0, 0.8, 0.0, tp.FERMION) < 1e-12


def test_eigenstate_residual_random_sample():
    rng = np.random.default_rng(5)
    for stat in (tp.BOSON, tp.FERMION):
        for _ in range(20):
            k0 = rng.uniform(-np.pi + 0.1, -0.1)
            k1 = rng.uniform(0.1, np.pi - 0.1)
            u = rng.uniform(-6, 6)
            assert tp.verify_two_particle_eigenstate(24, k0, k1, u, stat) < 1e-10


def test_eigenstate_short_path_rejected():
    with pytest.raises(ValueError):
        tp.verify_two_particle_eigenstate(10, *CP, -4.0, tp.BOSON)


def test_wave_function_exchange_symmetry():
    psi_b = tp.bethe_wave_function(30, -1.2, 0.9, -3.0, tp.BOSON)
    assert np.max(np.abs(psi_b - psi_b.T)) < 1e-12
    psi_f = tp.bethe_wave_function(30, -1.2, 0.9, -1.5, tp.FERMION)
    assert np.max(np.abs(psi_f + psi_f.T)) < 1e-12
    assert np.max(np.abs(np.diag(psi_f))) == 0.0


def test_hard_core_limit_value():
    # double-zero of numerator and denominator only in the u -> inf sense;
    # the guarded branch returns -1
    assert tp.boson_amplitude(-np.pi / 2, np.pi / 2, 0.0) == 1.0
    val = tp.fermion_amplitude(-np.pi / 2 + 0.3, np.pi / 2 + 0.3, 2.0 * np.cos(0.3))
    assert abs(abs(val) - 1.0) < 1e-12
