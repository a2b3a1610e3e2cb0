#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Logging hints shared by the command line and library entry points.
"""
from wavestate.bunch import Bunch

from .base import (
    ArgumentError,
    mapcheck_bool,
    mapcheck_nonnegative_int,
)


def mc_log_level(aid, aname, val):
    val = mapcheck_nonnegative_int(aid, aname, val)
    if val > 10:
        raise ArgumentError(
            "log_level values must be between 0-10, 0 being least verbose, 10 most."
        )
    return val


def mc_log_level_orNone(aid, aname, val):
    if val is None:
        return None
    return mc_log_level(aid, aname, val)


def hint_log_level(**kwargs):
    kw = dict(
        mapcheck=mc_log_level_orNone,
        APgroup="logging",
        APpriority=25,
        APtype=int,
    )
    kw.update(**kwargs)
    return kw


kw_hints = Bunch(
    logging_use=dict(
        APgroup="logging",
        APpriority=30,
        APaction="store_true",
        mapcheck=mapcheck_bool,
        default=False,
        about="Use the python logging module instead of print",
        aliases=["use_logging_module"],
    ),
    log_level=hint_log_level(
        APshort="-l",
        APpriority=20,
        mapcheck=mc_log_level,
        default=5,
        about="Log level default for all logging types",
        aliases=["verbosity"],
    ),
    log_level_alert=hint_log_level(
        about="""
        Failed convergence checks and per-point sweep failures. Typically logs at level 2-4.
        """,
    ),
    log_level_info=hint_log_level(
        about="""
        Logging on miscellaneous details of the run configuration and results.
        """,
    ),
    log_level_progress=hint_log_level(
        about="""
        Progress through propagation records and sweep points.
        """,
    ),
    log_level_debug=hint_log_level(
        default=0,
        about="""
        Debugging reports used for development, such as parsed configurations and fit results.
        """,
    ),
    log_level_warn=hint_log_level(
        about="""
        Warnings about configurations operating in a regime unexpected to work.
        """,
    ),
)
