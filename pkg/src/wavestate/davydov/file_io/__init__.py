#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
from .utilities import (
    atomic_write,
    normalize_ndarray,
    cull_None,
)

from .json_io import (
    load_json,
    write_json,
)

from .csv_io import (
    load_csv,
    write_csv,
)


__all__ = [
    "atomic_write",
    "normalize_ndarray",
    "cull_None",
    "load_json",
    "write_json",
    "load_csv",
    "write_csv",
]
