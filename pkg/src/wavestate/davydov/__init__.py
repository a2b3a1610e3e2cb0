#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Multiple Davydov D2 dynamics of a driven spin-1 system coupled to phonon modes.
"""
from ._version import version, __version__, version_info

from .exceptions import (
    DavydovError,
    NumericalError,
    StateError,
    ConvergenceError,
    NormDriftError,
    SolverError,
    FitError,
)
from .arguments import ArgumentError, HintAid
from .model import ModelConfig, LinearDrive, PeriodicDrive, with_params
from .bath import BathModes, SpectralParams, single_mode, discretize
from .ansatz import MultiD2State, initial_state
from .integrator import PropagationConfig, TrajectoryRecord, propagate
from .analysis import SweepGrid, SweepResult, RabiFit, sweep, fit_rabi, find_peaks
from .config import load_run_config, parse_run_config


__all__ = [
    "version",
    "__version__",
    "version_info",
    "DavydovError",
    "NumericalError",
    "StateError",
    "ConvergenceError",
    "NormDriftError",
    "SolverError",
    "FitError",
    "ArgumentError",
    "HintAid",
    "ModelConfig",
    "LinearDrive",
    "PeriodicDrive",
    "with_params",
    "BathModes",
    "SpectralParams",
    "single_mode",
    "discretize",
    "MultiD2State",
    "initial_state",
    "PropagationConfig",
    "TrajectoryRecord",
    "propagate",
    "SweepGrid",
    "SweepResult",
    "RabiFit",
    "sweep",
    "fit_rabi",
    "find_peaks",
    "load_run_config",
    "parse_run_config",
]
