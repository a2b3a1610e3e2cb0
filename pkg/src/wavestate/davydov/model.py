#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Spin-1 system Hamiltonian with anisotropy and time dependent drive fields.

Amplitudes are ordered (A, B, C) for spin labels (-1, 0, 1). Frequencies are in units
of the reference drive frequency and hbar = 1.
"""
import dataclasses
import numpy as np

from .arguments.base import ArgumentError

SPIN_LABELS = (-1, 0, 1)
# column-name fragments for the labels
SPIN_NAMES = ("m1", "0", "1")


def spin_index(spin):
    try:
        return SPIN_LABELS.index(int(spin))
    except (ValueError, TypeError):
        raise ArgumentError("spin={} must be one of {}".format(spin, list(SPIN_LABELS)))


def spin1_matrices():
    """
    Returns (Sz, Sx). Sz puts +1 on A so that Omega_z enters the diagonal as (+, 0, -).
    """
    Sz = np.diag([1.0, 0.0, -1.0])
    Sx = np.array(
        [
            [0.0, 1.0, 0.0],
            [1.0, 0.0, 1.0],
            [0.0, 1.0, 0.0],
        ]
    ) / np.sqrt(2)
    return Sz, Sx


SZ, SX = spin1_matrices()
SZ.setflags(write=False)
SX.setflags(write=False)


def anisotropy_matrix(D):
    """
    D (Sz^2 - 2/3 I), traceless
    """
    return D * (SZ @ SZ - (2.0 / 3.0) * np.eye(3))


@dataclasses.dataclass(frozen=True)
class LinearDrive(object):
    v: float
    Delta: float = 0.0

    kind = "linear"
    periodic = False

    def __post_init__(self):
        if not (self.v > 0):
            raise ArgumentError("argument v={} must be positive".format(self.v))

    def values(self, t):
        return self.v * t, self.Delta


@dataclasses.dataclass(frozen=True)
class PeriodicDrive(object):
    A_z: float = 0.0
    omega_z: float = 1.0
    A_x: float = 0.0
    omega_x: float = 1.0

    kind = "periodic"
    periodic = True

    def __post_init__(self):
        if not (self.omega_z > 0):
            raise ArgumentError("argument omega_z={} must be positive".format(self.omega_z))
        if not (self.omega_x > 0):
            raise ArgumentError("argument omega_x={} must be positive".format(self.omega_x))

    def values(self, t):
        return (
            self.A_z * np.cos(self.omega_z * t),
            self.A_x * np.cos(self.omega_x * t),
        )


def drive_values(drive, t):
    """
    (Omega_z(t), Omega_x(t)) for either drive variant
    """
    return drive.values(t)


@dataclasses.dataclass(frozen=True)
class ModelConfig(object):
    D: float = 0.0
    drive: object = dataclasses.field(default_factory=PeriodicDrive)

    def __post_init__(self):
        if not np.isfinite(self.D):
            raise ArgumentError("argument D={} must be finite".format(self.D))
        if not isinstance(self.drive, (LinearDrive, PeriodicDrive)):
            raise ArgumentError("drive must be a LinearDrive or PeriodicDrive")


def with_params(cfg, D=None, **drive_overrides):
    """
    Copy of cfg with the anisotropy and/or drive fields replaced.
    """
    drive = cfg.drive
    if drive_overrides:
        fields = {f.name for f in dataclasses.fields(drive)}
        unknown = set(drive_overrides) - fields
        if unknown:
            raise ArgumentError(
                "{} drive has no fields {}".format(drive.kind, sorted(unknown))
            )
        drive = dataclasses.replace(drive, **drive_overrides)
    if D is None:
        D = cfg.D
    return ModelConfig(D=D, drive=drive)


def system_matrix(cfg, t):
    Oz, Ox = cfg.drive.values(t)
    H = anisotropy_matrix(cfg.D) + Oz * SZ + Ox * SX
    return H
