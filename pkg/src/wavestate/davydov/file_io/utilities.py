#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import os
import tempfile
import contextlib
from collections import abc
import numpy as np


@contextlib.contextmanager
def atomic_write(fname, mode="w", encoding="utf8"):
    """
    Yields a file handle on a temporary sibling of fname, renamed over fname on success.
    The target is never left partially written.
    """
    fname = os.fspath(fname)
    dirname = os.path.dirname(os.path.abspath(fname))
    fd, tmpname = tempfile.mkstemp(
        prefix=".{}.".format(os.path.basename(fname)), suffix=".tmp", dir=dirname
    )
    try:
        if "b" in mode:
            F = os.fdopen(fd, mode)
        else:
            F = os.fdopen(fd, mode, encoding=encoding, newline="")
        with F:
            yield F
            F.flush()
            os.fsync(F.fileno())
        os.replace(tmpname, fname)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmpname)
        raise


def cull_None(obj):
    if isinstance(obj, abc.Mapping):
        dels = []
        for k, v in obj.items():
            v2 = cull_None(v)
            if v2 is None:
                dels.append(k)
            else:
                obj[k] = v2
        for k in dels:
            del obj[k]
        return obj
    elif isinstance(obj, list):
        for idx, v in enumerate(obj):
            obj[idx] = cull_None(v)
        return obj
    return obj


def normalize_ndarray(obj):
    """
    Convert numpy containers and scalars into plain python values for serialization.
    Non-finite floats become None (JSON null).
    """
    if isinstance(obj, abc.Mapping):
        return {str(k): normalize_ndarray(v) for k, v in obj.items()}
    elif isinstance(obj, np.ndarray):
        return normalize_ndarray(obj.tolist())
    elif isinstance(obj, np.generic):
        return normalize_ndarray(obj.item())
    elif isinstance(obj, (list, tuple)):
        return [normalize_ndarray(v) for v in obj]
    elif isinstance(obj, complex):
        return [normalize_ndarray(obj.real), normalize_ndarray(obj.imag)]
    elif isinstance(obj, float):
        if not np.isfinite(obj):
            return None
        return obj
    return obj
