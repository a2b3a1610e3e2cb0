#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Brute force reference for single-mode configurations: the spin-1 system times a
truncated Fock space, propagated as a full wavefunction or diagonalized per time.
"""
import numpy as np
import scipy.linalg
import scipy.special
from wavestate.bunch import Bunch

from .arguments.base import ArgumentError
from .arguments.aid import ensure_aid
from .exceptions import ConvergenceError
from .integrator import rk4_step
from . import model as lzmodel


class TruncatedBasis(object):
    """
    Product basis |spin> (x) |n>, n = 0..n_max, flat index spin_index * (n_max + 1) + n.
    """

    def __init__(self, n_max):
        if int(n_max) != n_max or n_max < 0:
            raise ArgumentError("n_max={} must be a non-negative integer".format(n_max))
        self.n_max = int(n_max)

    @property
    def n_fock(self):
        return self.n_max + 1

    @property
    def dimension(self):
        return 3 * self.n_fock

    def index(self, spin, n):
        if not (0 <= n <= self.n_max):
            raise ArgumentError("Fock number {} outside 0..{}".format(n, self.n_max))
        return lzmodel.spin_index(spin) * self.n_fock + int(n)

    def label(self, idx):
        sidx, n = divmod(int(idx), self.n_fock)
        return lzmodel.SPIN_LABELS[sidx], n

    def annihilation(self):
        return np.diag(np.sqrt(np.arange(1, self.n_fock, dtype=float)), 1)

    def number(self):
        return np.diag(np.arange(self.n_fock, dtype=float))


def _require_single_mode(bath):
    if bath.N_b != 1:
        raise ArgumentError(
            "the truncated Fock reference handles one mode, the bath has {}".format(bath.N_b)
        )


class _HamiltonianParts(object):
    """
    H(t) = H0 + Omega_z(t) Hz + Omega_x(t) Hx with the static pieces precomputed
    """

    def __init__(self, model, bath, basis):
        _require_single_mode(bath)
        I_b = np.eye(basis.n_fock)
        b = basis.annihilation()
        coupling = bath.eta_z[0] * lzmodel.SZ + bath.eta_x[0] * lzmodel.SX
        self.H0 = (
            np.kron(lzmodel.anisotropy_matrix(model.D), I_b)
            + np.kron(np.eye(3), bath.omega[0] * basis.number())
            + np.kron(coupling, b + b.T)
        )
        self.Hz = np.kron(lzmodel.SZ, I_b)
        self.Hx = np.kron(lzmodel.SX, I_b)
        self.drive = model.drive

    def __call__(self, t):
        Oz, Ox = self.drive.values(t)
        return self.H0 + Oz * self.Hz + Ox * self.Hx


def full_hamiltonian(model, bath, t, basis):
    return _HamiltonianParts(model, bath, basis)(t)


def coherent_state(basis, spin, f0=0.0):
    """
    |spin> (x) |f0> expanded up to n_max and renormalized in the truncated space.
    """
    n = np.arange(basis.n_fock)
    f0 = complex(f0)
    if f0 == 0:
        fock = (n == 0).astype(complex)
    else:
        fock = np.exp(-0.5 * abs(f0) ** 2) * f0 ** n / np.sqrt(scipy.special.factorial(n))
    psi = np.zeros(basis.dimension, dtype=complex)
    sidx = lzmodel.spin_index(spin)
    psi[sidx * basis.n_fock : (sidx + 1) * basis.n_fock] = fock
    return psi / np.linalg.norm(psi)


def _propagate_fixed(Hparts, basis, psi0, t_grid, dt):
    psi = np.array(psi0, dtype=complex)

    def deriv(t, y):
        return -1j * (Hparts(t) @ y)

    fock = np.empty((len(t_grid), 3, basis.n_fock))
    norms = np.empty(len(t_grid))
    for idx, t in enumerate(t_grid):
        if idx > 0:
            t_prev = t_grid[idx - 1]
            n_sub = max(1, int(np.ceil((t - t_prev) / dt - 1e-9)))
            h = (t - t_prev) / n_sub
            for sub in range(n_sub):
                psi = rk4_step(deriv, psi, t_prev + sub * h, h)
        prob = np.abs(psi.reshape(3, basis.n_fock)) ** 2
        fock[idx] = prob
        norms[idx] = np.sum(prob)
    return Bunch(
        t=np.array(t_grid, dtype=float),
        P=fock.sum(axis=2),
        fock=fock,
        norm=norms,
        n_max=basis.n_max,
        psi=psi,
    )


def exact_propagate(
    model,
    bath,
    basis,
    psi0=None,
    t_grid=None,
    dt=2.5e-4,
    spin=0,
    tol=1e-4,
    n_max_limit=40,
    aid=None,
):
    """
    Propagate i dpsi/dt = H(t) psi with RK4 at step dt, reporting P_k(t) and P_kn(t).

    With an explicit psi0 the basis is fixed. Otherwise psi0 is the coherent state
    of spin and the bath initial displacement, and n_max is raised from basis.n_max
    until the populations change by less than tol (ConvergenceError past n_max_limit).
    """
    aid = ensure_aid(aid)
    _require_single_mode(bath)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 1:
        raise ArgumentError("t_grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t_grid) <= 0):
        raise ArgumentError("t_grid must be strictly increasing")
    if not (dt > 0):
        raise ArgumentError("dt={} must be positive".format(dt))

    if psi0 is not None:
        psi0 = np.asarray(psi0, dtype=complex)
        if psi0.shape != (basis.dimension,):
            raise ArgumentError("psi0 must have the basis dimension {}".format(basis.dimension))
        if abs(np.linalg.norm(psi0) - 1) > 1e-10:
            raise ArgumentError("psi0 must be normalized")
        return _propagate_fixed(_HamiltonianParts(model, bath, basis), basis, psi0, t_grid, dt)

    n_max = basis.n_max
    previous = None
    while True:
        trial = TruncatedBasis(n_max)
        result = _propagate_fixed(
            _HamiltonianParts(model, bath, trial),
            trial,
            coherent_state(trial, spin, bath.f0[0]),
            t_grid,
            dt,
        )
        if previous is not None:
            change = float(np.max(np.abs(result.P - previous.P)))
            aid.log_info(
                6,
                "oracle n_max {} -> {}: population change {:.3e}".format(
                    previous.n_max, n_max, change
                ),
            )
            if change < tol:
                result.change = change
                return result
        if n_max >= n_max_limit:
            raise ConvergenceError(
                "truncated Fock populations not converged to {:.1e} by n_max={}".format(
                    tol, n_max_limit
                )
            )
        previous = result
        n_max = min(n_max_limit, max(n_max + 2, 2 * n_max))


def energy_levels(model, bath, basis, t_grid):
    """
    Sorted eigenvalues of the truncated Hamiltonian, shape (len(t_grid), dimension).
    """
    Hparts = _HamiltonianParts(model, bath, basis)
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    levels = np.empty((len(t_grid), basis.dimension))
    for idx, t in enumerate(t_grid):
        levels[idx] = scipy.linalg.eigvalsh(Hparts(t))
    return levels


def compare(record, reference):
    """
    max_t |P_k - P_k(reference)| for each spin, on a shared time grid
    """
    if len(record.t) != len(reference.t) or not np.allclose(record.t, reference.t, atol=1e-9):
        raise ArgumentError("trajectories must share their time grid to be compared")
    return np.max(np.abs(record.P - reference.P), axis=0)
