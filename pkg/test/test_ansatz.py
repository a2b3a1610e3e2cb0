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
import scipy.special
import pytest

from wavestate.davydov import ansatz, bath, model
from wavestate.davydov.ansatz import MultiD2State
from wavestate.davydov.arguments import ArgumentError
from wavestate.davydov.exceptions import StateError


def random_state(M, N_b, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(M, 3)) + 1j * rng.normal(size=(M, 3))
    f = 0.5 * (rng.normal(size=(M, N_b)) + 1j * rng.normal(size=(M, N_b)))
    state = MultiD2State(a, f)
    state.amplitudes /= np.sqrt(ansatz.norm(state))
    return state


def test_debye_waller():
    assert ansatz.debye_waller([0.3 + 1j], [0.3 + 1j]) == pytest.approx(1)
    npt.assert_allclose(ansatz.debye_waller([0.0], [1.0]), np.exp(-0.5))
    state = random_state(4, 3)
    S = ansatz.debye_waller_matrix(state.displacements)
    npt.assert_allclose(S, S.T.conj(), atol=1e-14)
    npt.assert_allclose(np.diag(S), 1)
    assert np.min(np.linalg.eigvalsh(S)) > -1e-10
    f = state.displacements
    npt.assert_allclose(S[1, 2], ansatz.debye_waller(f[1], f[2]))
    npt.assert_allclose(abs(S[0, 3]), np.exp(-0.5 * np.sum(abs(f[0] - f[3]) ** 2)))


def test_pack_order():
    a = np.arange(6).reshape(2, 3)
    f = 10 + np.arange(4).reshape(2, 2)
    state = MultiD2State(a, f)
    npt.assert_allclose(state.pack(), [0, 3, 1, 4, 2, 5, 10, 11, 12, 13])
    state2 = MultiD2State.unpack(state.pack(), 2, 2, t=1.5)
    npt.assert_allclose(state2.amplitudes, a)
    npt.assert_allclose(state2.displacements, f)
    assert state2.t == 1.5
    assert state.dimension == 10


def test_shape_validation():
    with pytest.raises(ArgumentError):
        MultiD2State(np.zeros((2, 2)), np.zeros((2, 1)))
    with pytest.raises(ArgumentError):
        MultiD2State(np.zeros((2, 3)), np.zeros((3, 1)))


def test_norm_and_populations():
    state = MultiD2State([[0, 1, 0]], [[0]])
    assert ansatz.norm(state) == 1
    npt.assert_allclose(ansatz.populations(state), [0, 1, 0])

    state = MultiD2State([[0, 0.5, 0], [0, 0.5, 0]], [[0.3], [0.3]])
    npt.assert_allclose(ansatz.norm(state), 1)

    state = random_state(5, 2)
    P = ansatz.populations(state)
    assert abs(np.sum(P) - ansatz.norm(state)) < 1e-12
    assert np.all(P >= 0)


def test_norm_corruption():
    state = MultiD2State([[np.nan, 1, 0]], [[0]])
    with pytest.raises(StateError):
        ansatz.norm(state)


def test_gauge_invariance():
    state = random_state(3, 2, seed=4)
    P = ansatz.populations(state)
    npt.assert_allclose(ansatz.populations(state.with_phase(0.7)), P, atol=1e-13)
    split = state.split_branch(1)
    assert split.M == 4
    npt.assert_allclose(ansatz.populations(split), P, atol=1e-13)
    npt.assert_allclose(ansatz.norm(split), ansatz.norm(state), atol=1e-13)


def test_fock_populations():
    vac = MultiD2State([[0, 1, 0]], [[0]])
    P = ansatz.fock_populations(vac, 3)
    assert P.shape == (3, 4)
    npt.assert_allclose(P[1], [1, 0, 0, 0])
    npt.assert_allclose(ansatz.fock_populations(vac, 0), [[0], [1], [0]])

    coh = MultiD2State([[0, 1, 0]], [[1.0]])
    P = ansatz.fock_populations(coh, 30)
    n = np.arange(31)
    npt.assert_allclose(P[1], np.exp(-1) / scipy.special.factorial(n), atol=1e-14)
    npt.assert_allclose(P[1, 0], 0.36787944117, rtol=1e-10)

    state = random_state(3, 1, seed=2)
    P = ansatz.fock_populations(state, 40)
    npt.assert_allclose(P.sum(axis=1), ansatz.populations(state), atol=1e-10)

    with pytest.raises(ArgumentError):
        ansatz.fock_populations(random_state(2, 2), 3)


def test_phonon_number():
    f = 0.6 - 0.2j
    state = MultiD2State([[0, 0, 1]], [[f, 2 * f]])
    npt.assert_allclose(ansatz.phonon_number(state), [abs(f) ** 2, 4 * abs(f) ** 2])


def test_hamiltonian_expectation():
    modes = bath.single_mode(1.0, eta_z=0.4)
    zero = model.ModelConfig(D=0.0, drive=model.PeriodicDrive())
    vac = MultiD2State([[0, 1, 0]], [[0]])
    assert abs(ansatz.hamiltonian_expectation(vac, zero, bath.single_mode(2.0), 0.0)) < 1e-15

    cfg = model.ModelConfig(D=10.0, drive=model.PeriodicDrive())
    npt.assert_allclose(ansatz.hamiltonian_expectation(vac, cfg, modes, 0.0), -20 / 3)

    # spin 1 in a coherent state, linear drive at t=0 leaves only Delta Sx which has no diagonal
    f = 0.3 + 0.1j
    cfg = model.ModelConfig(D=10.0, drive=model.LinearDrive(v=1.0, Delta=0.5))
    state = MultiD2State([[0, 0, 1]], [[f]])
    E = ansatz.hamiltonian_expectation(state, cfg, modes, 0.0)
    npt.assert_allclose(E, 10 / 3 + abs(f) ** 2 - 2 * f.real * 0.4)


def test_initial_state():
    modes = bath.single_mode(1.0, eta_x=0.1, f0=1.0)
    state = ansatz.initial_state(0, modes, M=1, noise=0.0)
    npt.assert_allclose(state.amplitudes, [[0, 1, 0]])
    npt.assert_allclose(state.displacements, [[1.0]])

    s1 = ansatz.initial_state(-1, modes, M=6, noise=1e-4, seed=12)
    s2 = ansatz.initial_state(-1, modes, M=6, noise=1e-4, seed=12)
    s3 = ansatz.initial_state(-1, modes, M=6, noise=1e-4, seed=13)
    npt.assert_array_equal(s1.pack(), s2.pack())
    assert not np.array_equal(s1.pack(), s3.pack())
    npt.assert_allclose(ansatz.norm(s1), 1, atol=1e-14)
    assert np.max(np.abs(s1.displacements[1:])) <= 1e-4 * np.sqrt(2)
    assert ansatz.populations(s1)[0] > 0.999

    with pytest.raises(ArgumentError):
        ansatz.initial_state(0, modes, M=0)
    with pytest.raises(ArgumentError):
        ansatz.initial_state(3, modes, M=1)


def test_observables():
    modes = bath.single_mode(1.0, eta_z=0.4)
    cfg = model.ModelConfig(D=10.0, drive=model.LinearDrive(v=1.0, Delta=0.5))
    state = ansatz.initial_state(0, modes, M=2, seed=1)
    state.t = -3.0
    rec = ansatz.observables(state, cfg, modes, n_max=2, energy=True)
    assert rec.t == -3.0
    assert rec.fock.shape == (3, 3)
    npt.assert_allclose(rec.norm, 1, atol=1e-12)
    assert rec.energy == pytest.approx(ansatz.hamiltonian_expectation(state, cfg, modes, -3.0))
    rec = ansatz.observables(state, cfg, modes)
    assert rec.fock is None and rec.energy is None
