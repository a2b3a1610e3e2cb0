#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Multiple Davydov D2 trial state

    |psi> = sum_m (A_m |-1> + B_m |0> + C_m |1>) |f_m>

with |f_m> an unnormalized-phase multimode coherent state, and its observables.
"""
import numpy as np
from wavestate.bunch import Bunch

from .arguments.base import ArgumentError
from .exceptions import StateError
from . import model as lzmodel


class MultiD2State(object):
    """
    amplitudes has shape (M, 3) ordered (A, B, C); displacements has shape (M, N_b).
    """

    def __init__(self, amplitudes, displacements, t=0.0):
        amplitudes = np.array(amplitudes, dtype=complex)
        displacements = np.array(displacements, dtype=complex)
        if amplitudes.ndim != 2 or amplitudes.shape[1] != 3:
            raise ArgumentError("amplitudes must have shape (M, 3)")
        if displacements.ndim != 2 or displacements.shape[0] != amplitudes.shape[0]:
            raise ArgumentError("displacements must have shape (M, N_b)")
        self.amplitudes = amplitudes
        self.displacements = displacements
        self.t = float(t)

    @property
    def M(self):
        return self.amplitudes.shape[0]

    @property
    def N_b(self):
        return self.displacements.shape[1]

    @property
    def dimension(self):
        return self.M * (3 + self.N_b)

    def pack(self):
        """
        Flat parameter vector ordered (A_1..A_M, B_1..B_M, C_1..C_M, f_11..f_MN_b).
        """
        return np.concatenate([self.amplitudes.T.ravel(), self.displacements.ravel()])

    @classmethod
    def unpack(cls, vec, M, N_b, t=0.0):
        vec = np.asarray(vec)
        amplitudes = vec[: 3 * M].reshape(3, M).T
        displacements = vec[3 * M :].reshape(M, N_b)
        return cls(amplitudes, displacements, t)

    def copy(self):
        return self.__class__(self.amplitudes, self.displacements, self.t)

    def is_finite(self):
        return bool(
            np.all(np.isfinite(self.amplitudes)) and np.all(np.isfinite(self.displacements))
        )

    def with_phase(self, theta):
        """
        Same physical state with every amplitude multiplied by exp(i theta).
        """
        return self.__class__(
            self.amplitudes * np.exp(1j * theta), self.displacements, self.t
        )

    def split_branch(self, m):
        """
        Same physical state with branch m replaced by two identical half-amplitude branches.
        """
        amplitudes = np.vstack([self.amplitudes, self.amplitudes[m : m + 1] / 2])
        amplitudes[m] /= 2
        displacements = np.vstack([self.displacements, self.displacements[m : m + 1]])
        return self.__class__(amplitudes, displacements, self.t)

    def __repr__(self):
        return "MultiD2State(M={}, N_b={}, t={})".format(self.M, self.N_b, self.t)


def debye_waller(f_m, f_n):
    f_m = np.asarray(f_m, dtype=complex)
    f_n = np.asarray(f_n, dtype=complex)
    if f_m.shape != f_n.shape:
        raise ArgumentError("displacement vectors must have equal lengths")
    return np.exp(
        np.sum(
            -0.5 * np.abs(f_m) ** 2 - 0.5 * np.abs(f_n) ** 2 + np.conjugate(f_m) * f_n
        )
    )


def debye_waller_matrix(displacements):
    f = np.asarray(displacements, dtype=complex)
    sq = np.sum(np.abs(f) ** 2, axis=1)
    return np.exp(-0.5 * sq[:, None] - 0.5 * sq[None, :] + f.conj() @ f.T)


def amplitude_overlap(state):
    """
    rho_mn = sum_s conj(a_ms) a_ns
    """
    a = state.amplitudes
    return a.conj() @ a.T


def _checked_real(val, what, rtol=1e-12):
    if not np.isfinite(val):
        raise StateError("{} is not finite".format(what))
    if abs(val.imag) > rtol * max(1.0, abs(val.real)):
        raise StateError(
            "{} has imaginary part {:.3e}, the state is corrupted".format(what, val.imag)
        )
    return float(val.real)


def norm(state):
    S = debye_waller_matrix(state.displacements)
    N = _checked_real(np.sum(amplitude_overlap(state) * S), "norm")
    if N < 0:
        raise StateError("norm {:.3e} is negative, the state is corrupted".format(N))
    return N


def populations(state):
    """
    (P_-1, P_0, P_1), unnormalized, summing to norm(state)
    """
    a = state.amplitudes
    S = debye_waller_matrix(state.displacements)
    P = np.einsum("ms,ns,mn->s", a.conj(), a, S)
    return np.array(
        [_checked_real(P[idx], "P_{}".format(spin)) for idx, spin in enumerate(lzmodel.SPIN_LABELS)]
    )


def fock_populations(state, n_max):
    """
    Table P[k, n] of joint spin k (rows ordered -1, 0, 1) and phonon number n.
    Single-mode states only.
    """
    if state.N_b != 1:
        raise ArgumentError(
            "Fock-resolved populations need a single-mode state, got N_b={}".format(state.N_b)
        )
    n_max = int(n_max)
    if n_max < 0:
        raise ArgumentError("n_max={} must be non-negative".format(n_max))
    f = state.displacements[:, 0]
    # f^n / sqrt(n!) built up iteratively
    powers = np.empty((state.M, n_max + 1), dtype=complex)
    powers[:, 0] = 1
    for n in range(1, n_max + 1):
        powers[:, n] = powers[:, n - 1] * f / np.sqrt(n)
    weights = np.exp(-0.5 * np.abs(f) ** 2)[:, None] * powers
    amp = np.einsum("ms,mn->sn", state.amplitudes, weights)
    return np.abs(amp) ** 2


def phonon_number(state):
    """
    Mean phonon number per mode, normalized by the norm.
    """
    f = state.displacements
    W = amplitude_overlap(state) * debye_waller_matrix(f)
    n = np.einsum("mn,mk,nk->k", W, f.conj(), f)
    return n.real / norm(state)


def branch_hamiltonians(state, model, bath, t):
    """
    Overlap-reduced Hamiltonian between every pair of branches,

        <f_m| H |f_n> = S_mn (H_S + W_mn I + Z_mn Sz + Y_mn Sx)

    returned with the Gram matrix S and the amplitude overlap rho.
    """
    f = state.displacements
    omega = bath.omega
    HS = lzmodel.system_matrix(model, t)
    W = (f.conj() * omega[None, :]) @ f.T
    Z = (f.conj() @ bath.eta_z)[:, None] + (f @ bath.eta_z)[None, :]
    Y = (f.conj() @ bath.eta_x)[:, None] + (f @ bath.eta_x)[None, :]
    H = (
        HS[None, None, :, :]
        + W[:, :, None, None] * np.eye(3)[None, None, :, :]
        + Z[:, :, None, None] * lzmodel.SZ[None, None, :, :]
        + Y[:, :, None, None] * lzmodel.SX[None, None, :, :]
    )
    return Bunch(
        S=debye_waller_matrix(f),
        rho=amplitude_overlap(state),
        H=H,
        HS=HS,
    )


def hamiltonian_expectation(state, model, bath, t):
    a = state.amplitudes
    bh = branch_hamiltonians(state, model, bath, t)
    h = np.einsum("ms,mnst,nt->mn", a.conj(), bh.H, a)
    N = _checked_real(np.sum(bh.rho * bh.S), "norm")
    E = np.sum(bh.S * h) / N
    return _checked_real(E, "energy", rtol=1e-10)


def initial_state(spin, bath, M, noise=1e-4, seed=None):
    """
    Branch 1 holds amplitude 1 on spin and the bath initial displacement; every real
    and imaginary part then receives uniform noise in [-noise, noise] before the
    amplitudes are rescaled to unit norm.
    """
    M = int(M)
    if M < 1:
        raise ArgumentError("multiplicity M={} must be positive".format(M))
    if noise < 0:
        raise ArgumentError("noise={} must be non-negative".format(noise))
    sidx = lzmodel.spin_index(spin)

    a = np.zeros((M, 3), dtype=complex)
    a[0, sidx] = 1
    f = np.zeros((M, bath.N_b), dtype=complex)
    f[0] = bath.f0

    if noise > 0:
        rng = np.random.default_rng(seed)
        a += noise * (
            rng.uniform(-1, 1, size=a.shape) + 1j * rng.uniform(-1, 1, size=a.shape)
        )
        f += noise * (
            rng.uniform(-1, 1, size=f.shape) + 1j * rng.uniform(-1, 1, size=f.shape)
        )

    state = MultiD2State(a, f, 0.0)
    state.amplitudes /= np.sqrt(norm(state))
    return state


def observables(state, model, bath, n_max=None, energy=False):
    """
    ObservableRecord of the state at its own time.
    """
    P = populations(state)
    rec = Bunch(
        t=state.t,
        P=P,
        norm=norm(state),
        fock=None,
        energy=None,
    )
    if n_max is not None:
        rec.fock = fock_populations(state, n_max)
    if energy:
        rec.energy = hamiltonian_expectation(state, model, bath, state.t)
    return rec
