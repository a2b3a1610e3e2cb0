#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Text helpers for help strings, log lines and result summaries.
"""
import textwrap
import numpy as np
import tabulate


def padding_remove(docstring_like, tabsize=4):
    """
    Strip a triple quoted string and remove the indentation shared by every line
    after the first.
    """
    text = docstring_like.strip().expandtabs(tabsize)
    first, sep, rest = text.partition("\n")
    if not sep:
        return first
    return first + "\n" + textwrap.dedent(rest)


def format_cell(v):
    if isinstance(v, (float, np.floating)):
        if not np.isfinite(v):
            return "nan"
        return "{0:.6g}".format(v)
    return v


def table(rows, headers, minwidth=8, **kwargs):
    """
    Render result records with tabulate. Headers longer than their column (or minwidth)
    are wrapped onto several lines.
    """
    rows = [[format_cell(v) for v in row] for row in rows]
    widths = [minwidth] * len(headers)
    for row in rows:
        for idx, cell in enumerate(row):
            widths[idx] = max(widths[idx], len(str(cell)))
    headers = ["\n".join(textwrap.wrap(h, width=w)) for h, w in zip(headers, widths)]
    return tabulate.tabulate(rows, headers=headers, **kwargs)
