#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import json

from .utilities import atomic_write, normalize_ndarray, cull_None


def load_json(fname):
    with open(fname, encoding="utf8") as F:
        fdict = json.load(F)
    return fdict


def write_json(fname, fdict, cull=False):
    """
    Atomically write fdict. With cull=True, None entries of mappings are dropped
    (list entries stay, as they mark missing values).
    """
    obj = normalize_ndarray(fdict)
    if cull:
        obj = cull_None(obj)
    with atomic_write(fname, "w") as F:
        json.dump(obj, F, indent=4, ensure_ascii=False, allow_nan=False)
        F.write("\n")
    return
