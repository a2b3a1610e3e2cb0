#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import numpy as np
from wavestate.bunch import Bunch

from .utilities import atomic_write


def write_csv(fname, header, array, fmt="%.12g"):
    """
    Atomically write a comma separated table with a single header line.
    NaN cells are written as "nan".
    """
    array = np.asarray(array, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.shape[1] != len(header):
        raise ValueError(
            "CSV header has {} columns but the table has {}".format(
                len(header), array.shape[1]
            )
        )
    with atomic_write(fname, "w") as F:
        np.savetxt(
            F,
            array,
            delimiter=",",
            fmt=fmt,
            header=",".join(header),
            comments="",
        )
    return


def load_csv(fname):
    """
    Load a headered CSV written by write_csv into a Bunch of columns.
    The column order is kept in the "columns" entry.
    """
    farr = np.genfromtxt(
        fname,
        delimiter=",",
        names=True,
        filling_values=float("NaN"),
        deletechars="",
    )
    farr = np.atleast_1d(farr)
    columns = list(farr.dtype.names)
    fdict = Bunch()
    for name in columns:
        fdict[name] = np.asarray(farr[name], dtype=float)
    fdict["columns"] = columns
    return fdict
