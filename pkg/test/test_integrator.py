#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import numpy as np
import numpy.testing as npt
import pytest

from wavestate.davydov import integrator, bath, model, ansatz
from wavestate.davydov.integrator import PropagationConfig
from wavestate.davydov.arguments import ArgumentError, HintAid
from wavestate.davydov.exceptions import NormDriftError

# omega_x this small keeps A_x cos(omega_x t) constant to double precision
STATIC = 1e-12


def rabi_model(Delta=0.5):
    return model.ModelConfig(D=0.0, drive=model.PeriodicDrive(A_x=Delta, omega_x=STATIC))


def test_rk4_step():
    lam = -0.3 + 2j
    dt = 0.1
    y1 = integrator.rk4_step(lambda t, y: lam * y, np.array([1.0 + 0j]), 0.0, dt)
    z = lam * dt
    npt.assert_allclose(y1, 1 + z + z ** 2 / 2 + z ** 3 / 6 + z ** 4 / 24, rtol=1e-14)
    y1 = integrator.rk4_step(lambda t, y: np.array([3 * t ** 2]), np.array([0.0]), 1.0, 0.5)
    npt.assert_allclose(y1, 1.5 ** 3 - 1, rtol=1e-14)


def test_config_validation():
    cfg = PropagationConfig(t_end=1.0, dt=1e-2, seed=0)
    assert cfg.n_steps == 100
    assert cfg.step_of(0.25) == 25
    npt.assert_allclose(cfg.time_of(40), 0.4)
    with pytest.raises(ArgumentError):
        cfg.step_of(0.255)
    with pytest.raises(ArgumentError):
        cfg.step_of(1.5)
    with pytest.raises(ArgumentError):
        PropagationConfig(t_end=1.0, dt=0.3, seed=0)
    with pytest.raises(ArgumentError):
        PropagationConfig(t_end=1.0, dt=0.1, seed=None)
    with pytest.raises(ArgumentError):
        PropagationConfig(t_end=0.0, dt=0.1, seed=0)
    with pytest.raises(ArgumentError):
        PropagationConfig(t_end=1.0, dt=0.1, seed=0, M=0)
    with pytest.raises(ArgumentError):
        PropagationConfig(t_end=1.0, dt=0.1, seed=0, spin=2)
    assert integrator.default_dt(model.LinearDrive(v=1)) == 5e-4
    assert integrator.default_dt(model.PeriodicDrive()) == 1e-3


def test_three_level_rabi():
    """
    A static Delta Sx rotates |0> with P_0 = cos^2(Delta t), P_+-1 = sin^2(Delta t) / 2
    """
    cfg = PropagationConfig(t_end=3.0, dt=1e-3, seed=0, noise=0.0, record_every=100)
    rec = integrator.propagate(cfg, rabi_model(0.5), bath.single_mode(1.0))
    assert len(rec) == 31
    npt.assert_allclose(rec.t[-1], 3.0)
    npt.assert_allclose(rec.P_0, np.cos(0.5 * rec.t) ** 2, atol=1e-8)
    npt.assert_allclose(rec.P_m1, np.sin(0.5 * rec.t) ** 2 / 2, atol=1e-8)
    npt.assert_allclose(rec.P_1, rec.P_m1, atol=1e-10)


def test_zero_hamiltonian():
    cfg = PropagationConfig(t_end=0.5, dt=1e-2, seed=0, noise=0.0, spin=-1)
    zero = model.ModelConfig(D=0.0, drive=model.PeriodicDrive())
    rec = integrator.propagate(cfg, zero, bath.single_mode(1.0))
    initial = ansatz.initial_state(-1, bath.single_mode(1.0), 1, noise=0.0)
    npt.assert_allclose(rec.final_state.amplitudes, initial.amplitudes, atol=1e-15)
    npt.assert_allclose(rec.P_m1, 1, atol=1e-15)


def test_uncoupled_multimode():
    cfg = PropagationConfig(t_end=1.0, dt=1e-3, seed=0, noise=0.0)
    drive = model.ModelConfig(D=2.0, drive=model.PeriodicDrive(A_z=0.5, A_x=0.3, omega_x=3.0))
    modes = bath.discretize(bath.SpectralParams(alpha=0.0, omega_c=0.5, omega_m=6.0, N_b=4))
    rec_multi = integrator.propagate(cfg, drive, modes)
    rec_single = integrator.propagate(cfg, drive, bath.single_mode(1.0))
    npt.assert_allclose(rec_multi.P, rec_single.P, atol=1e-8)


def test_energy_conservation():
    cfg = PropagationConfig(t_end=2.0, dt=1e-3, seed=0, noise=0.0, energy=True, record_every=50)
    static = model.ModelConfig(
        D=2.0, drive=model.PeriodicDrive(A_z=0.3, omega_z=STATIC, A_x=0.5, omega_x=STATIC)
    )
    rec = integrator.propagate(cfg, static, bath.single_mode(1.0, eta_z=0.4, f0=0.3))
    assert np.max(np.abs(rec.energy - rec.energy[0])) < 1e-6


def test_duplicated_branch():
    cfg = PropagationConfig(t_end=0.5, dt=1e-3, seed=0, noise=0.0, norm_tolerance=1e-4)
    drive = model.ModelConfig(D=-1.0, drive=model.PeriodicDrive(A_z=0.5, A_x=0.3, omega_x=10.0))
    modes = bath.single_mode(1.0, eta_z=0.4, eta_x=0.1, f0=0.2)
    single = ansatz.initial_state(0, modes, 1, noise=0.0)
    rec1 = integrator.propagate(cfg, drive, modes, initial=single)
    rec2 = integrator.propagate(cfg, drive, modes, initial=single.split_branch(0))
    assert rec2.final_state.M == 2
    npt.assert_allclose(rec2.P, rec1.P, atol=1e-6)


def test_sum_rule_and_norm():
    cfg = PropagationConfig(
        t_end=1.0, dt=1e-3, seed=3, M=2, n_max=3, energy=True, norm_tolerance=1e-4
    )
    lz = model.ModelConfig(D=10.0, drive=model.LinearDrive(v=1.0, Delta=0.5))
    rec = integrator.propagate(cfg, lz, bath.single_mode(1.0, eta_z=0.4))
    npt.assert_allclose(rec.P.sum(axis=1), rec.norm, atol=1e-12)
    assert np.max(np.abs(rec.norm - 1)) <= 1e-4
    assert rec.meta.norm_drift <= 1e-4
    assert rec.fock.shape == (len(rec), 3, 4)
    assert np.all(rec.fock.sum(axis=2) <= rec.P + 1e-12)

    header = rec.header()
    assert header[:6] == ["t", "P_m1", "P_0", "P_1", "norm", "E"]
    assert header[6] == "P_m1_0" and header[-1] == "P_1_3"
    assert rec.table().shape == (len(rec), len(header))
    fdict = rec.to_dict()
    npt.assert_allclose(fdict["P_0"], rec.P_0)
    assert fdict["meta"]["M"] == 2


def test_record_times():
    cfg = PropagationConfig(t_end=1.0, dt=1e-2, seed=0, record_every=30, noise=0.0)
    rec = integrator.propagate(cfg, rabi_model(), bath.single_mode(1.0))
    npt.assert_allclose(rec.t, [0, 0.3, 0.6, 0.9, 1.0])
    rec = integrator.propagate(cfg, rabi_model(), bath.single_mode(1.0), record_times=[0.5, 0.25])
    npt.assert_allclose(rec.t, [0.25, 0.5])
    with pytest.raises(ArgumentError):
        integrator.propagate(cfg, rabi_model(), bath.single_mode(1.0), record_times=[0.255])


def test_determinism():
    cfg = PropagationConfig(t_end=0.2, dt=1e-3, seed=42, M=3, norm_tolerance=1e-4)
    lz = model.ModelConfig(D=10.0, drive=model.LinearDrive(v=1.0, Delta=0.5))
    modes = bath.single_mode(1.0, eta_z=0.4)
    rec1 = integrator.propagate(cfg, lz, modes)
    rec2 = integrator.propagate(cfg, lz, modes)
    npt.assert_array_equal(rec1.P, rec2.P)


def test_norm_drift_error():
    cfg = PropagationConfig(t_start=-20.0, t_end=-10.0, dt=0.5, seed=0, noise=0.0)
    lz = model.ModelConfig(D=10.0, drive=model.LinearDrive(v=1.0, Delta=0.5))
    aid = HintAid(dict(log_print=False))
    with pytest.raises(NormDriftError) as info:
        integrator.propagate(cfg, lz, bath.single_mode(1.0, eta_z=0.4), aid=aid)
    assert info.value.drift > 1e-6
    assert aid.diagnostics()


def test_argument_errors():
    cfg = PropagationConfig(t_end=0.1, dt=1e-2, seed=0, n_max=2)
    modes = bath.BathModes(omega=[1.0, 2.0], eta_z=0.1, eta_x=0.0)
    with pytest.raises(ArgumentError):
        integrator.propagate(cfg, rabi_model(), modes)


def test_noise_warning():
    cfg = PropagationConfig(t_end=0.01, dt=1e-3, seed=0, noise=0.0, M=2, norm_tolerance=1e-2)
    aid = HintAid(dict(log_print=False))
    integrator.propagate(cfg, rabi_model(), bath.single_mode(1.0), aid=aid)
    assert any("rank deficient" in msg for msg in aid.diagnostics())


def test_periodic_symmetry():
    """
    Without A_z the -1 <-> 1 exchange is a symmetry and the populations stay equal
    """
    cfg = PropagationConfig(t_end=2.0, dt=1e-3, seed=0, noise=0.0)
    drive = model.ModelConfig(D=-1.0, drive=model.PeriodicDrive(A_x=0.1, omega_x=10.0))
    rec = integrator.propagate(cfg, drive, bath.single_mode(1.0, eta_x=0.1))
    assert np.max(np.abs(rec.P_m1 - rec.P_1)) <= 1e-6


def test_convergence_in_dt():
    cfg = PropagationConfig(t_end=2.0, dt=2e-3, seed=0, noise=0.0, record_every=50)
    report = integrator.convergence_in_dt(cfg, rabi_model(), bath.single_mode(1.0))
    assert report.converged
    assert report.dt == (2e-3, 1e-3)
    npt.assert_allclose(report.records[0].t, report.records[1].t)
    assert report.max_diff < 1e-8


def test_convergence_in_M():
    cfg = PropagationConfig(t_end=0.2, dt=1e-3, seed=1, M=1, norm_tolerance=1e-4)
    drive = model.ModelConfig(D=-1.0, drive=model.PeriodicDrive(A_x=0.1, omega_x=10.0))
    report = integrator.convergence_in_M(cfg, drive, bath.single_mode(1.0, eta_x=0.1))
    assert report.M == (1, 3)
    assert report.max_diff < 5e-3
    assert report.converged


def test_time_reversal():
    static = model.ModelConfig(
        D=2.0, drive=model.PeriodicDrive(A_z=0.3, omega_z=STATIC, A_x=0.5, omega_x=STATIC)
    )
    modes = bath.single_mode(1.0, eta_z=0.4, f0=0.3)
    state = ansatz.initial_state(0, modes, 1, noise=0.0)
    P0 = ansatz.populations(state)
    dt = 1e-3
    for idx in range(200):
        state = integrator.step(state, static, modes, idx * dt, dt)
    assert np.max(np.abs(ansatz.populations(state) - P0)) > 1e-3
    for idx in range(200, 0, -1):
        state = integrator.step(state, static, modes, idx * dt, -dt)
    npt.assert_allclose(ansatz.populations(state), P0, atol=1e-6)
