#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Phonon modes, either given explicitly or discretized from a spectral density

    J(w) = 2 alpha w_c^(1-s) w^s exp(-w/w_c)

The continuum is cut into N_b pieces of equal weight under J(w)/w, so every mode
carries the coupling sqrt(norm * w_k).
"""
import dataclasses
import numpy as np
import scipy.integrate
import scipy.optimize

from .arguments.base import ArgumentError
from .arguments.aid import ensure_aid
from .exceptions import ConvergenceError


@dataclasses.dataclass(frozen=True)
class SpectralParams(object):
    alpha: float
    omega_c: float
    omega_m: float
    N_b: int
    s: float = 3.0
    coupling: str = "z"

    def __post_init__(self):
        if not (self.alpha >= 0):
            raise ArgumentError("argument alpha={} must be non-negative".format(self.alpha))
        if not (self.s > 0):
            raise ArgumentError("argument s={} must be positive".format(self.s))
        if not (self.omega_c > 0):
            raise ArgumentError("argument omega_c={} must be positive".format(self.omega_c))
        if not (self.omega_m > 0):
            raise ArgumentError("argument omega_m={} must be positive".format(self.omega_m))
        if int(self.N_b) != self.N_b or self.N_b < 1:
            raise ArgumentError("argument N_b={} must be a positive integer".format(self.N_b))
        if self.coupling not in ("z", "x"):
            raise ArgumentError(
                "argument coupling={} must be 'z' or 'x'".format(self.coupling)
            )


def _frozen_array(val, dtype, N):
    arr = np.array(np.broadcast_to(np.asarray(val, dtype=dtype), (N,)), dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True, eq=False)
class BathModes(object):
    omega: np.ndarray
    eta_z: np.ndarray
    eta_x: np.ndarray
    f0: np.ndarray = 0
    normalization: float = None
    params: SpectralParams = None

    def __post_init__(self):
        omega = np.atleast_1d(np.asarray(self.omega, dtype=float))
        N = len(omega)
        if N < 1:
            raise ArgumentError("a bath needs at least one mode")
        if not np.all(np.isfinite(omega)) or np.any(omega <= 0):
            raise ArgumentError("mode frequencies must be positive and finite")
        if np.any(np.diff(omega) <= 0):
            raise ArgumentError("mode frequencies must be strictly increasing")
        object.__setattr__(self, "omega", _frozen_array(omega, float, N))
        for name, dtype in [("eta_z", float), ("eta_x", float), ("f0", complex)]:
            try:
                arr = _frozen_array(getattr(self, name), dtype, N)
            except (ValueError, TypeError):
                raise ArgumentError("{} must be broadcastable to {} modes".format(name, N))
            if not np.all(np.isfinite(arr)):
                raise ArgumentError("{} must be finite".format(name))
            object.__setattr__(self, name, arr)

    @property
    def N_b(self):
        return len(self.omega)


def single_mode(omega_p, eta_z=0.0, eta_x=0.0, f0=0.0):
    if not (omega_p > 0):
        raise ArgumentError("argument omega_p={} must be positive".format(omega_p))
    return BathModes(
        omega=[omega_p],
        eta_z=[eta_z],
        eta_x=[eta_x],
        f0=[f0],
    )


def spectral_density(omega, p):
    omega_a = np.asarray(omega, dtype=float)
    if np.any(omega_a < 0):
        raise ArgumentError("spectral density is defined for omega >= 0")
    J = (
        2
        * p.alpha
        * p.omega_c ** (1 - p.s)
        * omega_a ** p.s
        * np.exp(-omega_a / p.omega_c)
    )
    if np.ndim(omega) == 0:
        return float(J)
    return J


def cumulative_weight(x, p):
    """
    integral of J(w)/w from 0 to x
    """
    if x <= 0:
        return 0.0
    if p.s == 3:
        y = x / p.omega_c
        return 2 * p.alpha * p.omega_c * (2 - np.exp(-y) * (y ** 2 + 2 * y + 2))

    def integrand(w):
        return 2 * p.alpha * p.omega_c ** (1 - p.s) * w ** (p.s - 1) * np.exp(-w / p.omega_c)

    val, err = scipy.integrate.quad(integrand, 0, x, epsabs=1e-14, epsrel=1e-12, limit=200)
    return val


def coupling_integral(p):
    """
    integral of J(w) over [0, omega_m], the continuum value of sum_k eta_k^2
    """
    val, err = scipy.integrate.quad(
        lambda w: spectral_density(w, p), 0, p.omega_m, epsabs=1e-14, epsrel=1e-12, limit=200
    )
    return val


def discretize(p, tol=1e-10, aid=None):
    aid = ensure_aid(aid)
    N_b = int(p.N_b)

    if p.alpha == 0:
        omega = p.omega_m * np.arange(1, N_b + 1) / N_b
        aid.log_info(6, "alpha = 0, using a uniform grid of {} uncoupled modes".format(N_b))
        return BathModes(
            omega=omega,
            eta_z=0.0,
            eta_x=0.0,
            f0=0.0,
            normalization=0.0,
            params=p,
        )

    total = cumulative_weight(p.omega_m, p)
    norm = total / N_b

    omega = np.empty(N_b)
    omega[-1] = p.omega_m
    for k in range(1, N_b):

        def residual(x):
            return cumulative_weight(x, p) / norm - k

        root, res = scipy.optimize.bisect(
            residual,
            0.0,
            p.omega_m,
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
            maxiter=500,
            full_output=True,
            disp=False,
        )
        miss = abs(residual(root))
        if not res.converged or miss > tol:
            raise ConvergenceError(
                "mode {} frequency not found: weight residual {:.3e} after {} iterations".format(
                    k, miss, res.iterations
                )
            )
        omega[k - 1] = root

    eta = np.sqrt(norm * omega)
    if p.coupling == "z":
        eta_z, eta_x = eta, 0.0
    else:
        eta_z, eta_x = 0.0, eta

    aid.log_info(
        6,
        "discretized {} modes over (0, {}], normalization {:.6g}".format(N_b, p.omega_m, norm),
    )
    return BathModes(
        omega=omega,
        eta_z=eta_z,
        eta_x=eta_x,
        f0=0.0,
        normalization=norm,
        params=p,
    )


def reorganization(bath):
    return float(np.sum(bath.eta_z ** 2) + np.sum(bath.eta_x ** 2))


def mode_table(bath):
    header = ["k", "omega_k", "eta_z_k", "eta_x_k"]
    table = np.column_stack(
        [
            np.arange(1, bath.N_b + 1),
            bath.omega,
            bath.eta_z,
            bath.eta_x,
        ]
    )
    return header, table
