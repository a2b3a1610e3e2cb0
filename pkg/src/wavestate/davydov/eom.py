#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Variational equations of motion for the multi-D2 parameters.

Stationarity of the Dirac-Frenkel action gives, for the packed parameter vector u,

    Mc udot + Kc conj(udot) = r

with Mc, Kc and r depending on the current state. The conj(udot) part comes from the
coherent state normalization, so the system is split into real and imaginary parts
and solved as a real system of twice the size.

Rows for amplitude (m, s), with S the Debye-Waller matrix and H^(mn) the overlap
reduced Hamiltonian of ansatz.branch_hamiltonians:

    sum_n S_mn [i a'_ns + i a_ns sum_k (f*_mk - f*_nk / 2) f'_nk
                - i/2 a_ns sum_k f_nk f*'_nk] = sum_n S_mn (H^(mn) a_n)_s

and for displacement (m, k), with rho_mn = a_m^+ a_n,

    sum_n S_mn [i (a_m^+ a'_n) f_nk + i rho_mn f'_nk
                + i rho_mn f_nk sum_k' (f*_mk' - f*_nk' / 2) f'_nk'
                - i/2 rho_mn f_nk sum_k' f_nk' f*'_nk']
        = sum_n S_mn [(a_m^+ H^(mn) a_n + w_k rho_mn) f_nk
                      + eta_z^k a_m^+ Sz a_n + eta_x^k a_m^+ Sx a_n]
"""
import numpy as np
import scipy.linalg
from wavestate.bunch import Bunch

from .arguments.base import ArgumentError
from .exceptions import SolverError
from .ansatz import branch_hamiltonians
from . import model as lzmodel


class EomSystem(object):
    def __init__(self, coeff, coeff_conj, rhs, M, N_b, t):
        self.coeff = coeff
        self.coeff_conj = coeff_conj
        self.rhs = rhs
        self.M = M
        self.N_b = N_b
        self.t = t

    @property
    def dimension(self):
        return len(self.rhs)

    def stacked(self):
        """
        Real system A x = b with x = [Re udot; Im udot].
        """
        P = self.coeff + self.coeff_conj
        Q = self.coeff - self.coeff_conj
        A = np.block(
            [
                [P.real, -Q.imag],
                [P.imag, Q.real],
            ]
        )
        b = np.concatenate([self.rhs.real, self.rhs.imag])
        return A, b


def assemble(state, model, bath, t):
    a = state.amplitudes
    f = state.displacements
    M, K = f.shape
    fc = f.conj()
    I3 = np.eye(3)

    bh = branch_hamiltonians(state, model, bath, t)
    S = bh.S
    SR = S * bh.rho

    d_amp = 3 * M
    d = d_amp + M * K
    coeff = np.zeros((d, d), dtype=complex)
    coeff_conj = np.zeros((d, d), dtype=complex)

    # amplitude rows, amplitude columns: i kron(I3, S)
    coeff[:d_amp, :d_amp] = 1j * np.kron(I3, S)

    # amplitude rows (s, m), displacement columns (n, k)
    dfc = fc[:, None, :] - 0.5 * fc[None, :, :]
    block = (
        1j
        * S[None, :, :, None]
        * a.T[:, None, :, None]
        * dfc[None, :, :, :]
    )
    coeff[:d_amp, d_amp:] = block.reshape(d_amp, M * K)
    block = -0.5j * S[None, :, :, None] * a.T[:, None, :, None] * f[None, None, :, :]
    coeff_conj[:d_amp, d_amp:] = block.reshape(d_amp, M * K)

    # displacement rows (m, k), amplitude columns (s, n)
    block = 1j * S[:, None, None, :] * a.conj()[:, None, :, None] * f.T[None, :, None, :]
    coeff[d_amp:, :d_amp] = block.reshape(M * K, d_amp)

    # displacement rows (m, k), displacement columns (n, k')
    block = SR[:, None, :, None] * (
        np.eye(K)[None, :, None, :]
        + f.T[None, :, :, None] * dfc[:, None, :, :]
    )
    coeff[d_amp:, d_amp:] = 1j * block.reshape(M * K, M * K)
    block = -0.5j * SR[:, None, :, None] * f.T[None, :, :, None] * f[None, None, :, :]
    coeff_conj[d_amp:, d_amp:] = block.reshape(M * K, M * K)

    rhs = np.empty(d, dtype=complex)
    rhs[:d_amp] = np.einsum("mn,mnst,nt->sm", S, bh.H, a).ravel()

    h = np.einsum("ms,mnst,nt->mn", a.conj(), bh.H, a)
    gz = a.conj() @ lzmodel.SZ @ a.T
    gx = a.conj() @ lzmodel.SX @ a.T
    rhs_f = (
        (S * h) @ f
        + bath.omega[None, :] * (SR @ f)
        + np.sum(S * gz, axis=1)[:, None] * bath.eta_z[None, :]
        + np.sum(S * gx, axis=1)[:, None] * bath.eta_x[None, :]
    )
    rhs[d_amp:] = rhs_f.ravel()

    return EomSystem(coeff, coeff_conj, rhs, M, K, t)


def default_regularization(A):
    return 1e-8 * np.linalg.norm(A, np.inf)


def solve(system, eps_reg=None, full_output=False):
    """
    Tikhonov regularized least squares,

        min |A x - b|^2 + eps_reg^2 |x|^2

    on the stacked real system, computed through the SVD of A. eps_reg=None uses
    1e-8 times the infinity norm of A; eps_reg=0 is the pseudo-inverse solution.
    Returns the complex derivative vector (and a diagnostic Bunch with full_output).
    """
    A, b = system.stacked()
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise SolverError("equations of motion are not finite", t=system.t)

    if eps_reg is None:
        eps_reg = default_regularization(A)
    elif eps_reg < 0:
        raise ArgumentError("eps_reg={} must be non-negative".format(eps_reg))

    try:
        U, sig, Vt = scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesdd")
    except (np.linalg.LinAlgError, ValueError):
        try:
            U, sig, Vt = scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesvd")
        except (np.linalg.LinAlgError, ValueError) as e:
            raise SolverError("SVD failed: {}".format(e), t=system.t)

    if sig[-1] > 0:
        condition = sig[0] / sig[-1]
    else:
        condition = np.inf

    if eps_reg > 0:
        filt = sig / (sig ** 2 + eps_reg ** 2)
    else:
        cutoff = sig[0] * len(sig) * np.finfo(float).eps
        filt = np.zeros_like(sig)
        keep = sig > cutoff
        filt[keep] = 1 / sig[keep]

    x = Vt.T @ (filt * (U.T @ b))
    if not np.all(np.isfinite(x)):
        raise SolverError("regularized solve is not finite", t=system.t, condition=condition)

    d = system.dimension
    udot = x[:d] + 1j * x[d:]
    if full_output:
        return udot, Bunch(condition=condition, eps_reg=eps_reg)
    return udot


def time_derivative(state, model, bath, t, eps_reg=None):
    return solve(assemble(state, model, bath, t), eps_reg)
