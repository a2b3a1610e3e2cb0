#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Exceptions raised during propagation and analysis.

Configuration problems are reported with arguments.ArgumentError (a ValueError);
everything here signals that a numerical computation could not complete.
"""


class DavydovError(Exception):
    pass


class NumericalError(DavydovError, RuntimeError):
    pass


class StateError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


class NormDriftError(NumericalError):
    def __init__(self, t, drift, tolerance):
        self.t = t
        self.drift = drift
        self.tolerance = tolerance
        super().__init__(
            "norm drift {:.3e} exceeds tolerance {:.1e} at t={:.6g}".format(
                drift, tolerance, t
            )
        )


class SolverError(NumericalError):
    def __init__(self, msg, t=None, condition=None):
        self.t = t
        self.condition = condition
        if t is not None:
            msg = "{} (t={:.6g})".format(msg, t)
        if condition is not None:
            msg = "{}, condition estimate {:.3e}".format(msg, condition)
        super().__init__(msg)


class FitError(NumericalError):
    def __init__(self, msg, diagnostic=None):
        self.diagnostic = diagnostic
        if diagnostic:
            msg = "{} [{}]".format(
                msg,
                ", ".join("{}={:.6g}".format(k, v) for k, v in sorted(diagnostic.items())),
            )
        super().__init__(msg)
