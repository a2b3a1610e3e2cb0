#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
from .base import (
    ArgumentError,
    grab_kwargs,
    grab_kwarg_hints,
    check_remaining_arguments,
)

from .pyargparse import (
    kwdict_argparse,
)

from .aid import HintAid, quiet_aid, ensure_aid

from . import logging

__all__ = [
    "ArgumentError",
    "grab_kwargs",
    "grab_kwarg_hints",
    "check_remaining_arguments",
    "kwdict_argparse",
    "HintAid",
    "quiet_aid",
    "ensure_aid",
    "logging",
]
