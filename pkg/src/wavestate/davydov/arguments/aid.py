#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import sys
import time
import logging
import contextlib

from ..strings import padding_remove
from .base import NOARG


# group -> (logging module level, prefix character, default verbosity, to stderr)
LOG_GROUPS = {
    "info": (logging.INFO, "I", 5, False),
    "debug": (logging.DEBUG, "D", 0, False),
    "warn": (logging.WARNING, "W", 5, True),
    "alert": (logging.WARNING, "A", 5, True),
    "progress": (logging.INFO, "P", 5, False),
}


class HintAid(object):
    """
    Holds run-wide hints (verbosity, output routing) and performs the grouped logging.
    Every emitted entry is kept in self.logs so diagnostics can be attached to result files.
    """

    def __init__(self, hints=None):
        self.mtime_start = time.time()

        if hints is None:
            hints = dict()

        if isinstance(hints, (list, tuple)):
            usehints = dict()
            for hdict in hints:
                usehints.update(hdict)
        else:
            usehints = dict(hints)

        self.hints = usehints

        # holds a heading for the logging, as well as sets tabbing
        self.log_header_stack = ()
        # how much of the header has been printed yet
        self.log_header_printed = 0

        self.logs = []
        return

    def hint_has(self, hname):
        return hname in self.hints

    def hint_setdefault(self, hname, hval):
        self.hints.setdefault(hname, hval)
        return

    def hint(self, *args, **kwargs):
        """
        Return the first hint found among the keys, or kwargs["default"].
        """
        superarg = []
        for arg in args:
            if isinstance(arg, (list, tuple)):
                superarg.extend(arg)
            else:
                superarg.append(arg)

        for key in superarg:
            ret = self.hints.get(key, NOARG)
            if ret is not NOARG and ret is not None:
                return ret
        return kwargs["default"]

    def log(self, *args, **kwargs):
        """
        First argument is the level, the group keyword must be one of
        ['info', 'debug', 'warn', 'alert', 'progress']
        """
        level = args[0]
        if isinstance(level, int):
            args = args[1:]
            group = kwargs.get("group", "info")
        else:
            level = -1
            group = kwargs.get("group", "debug")

        try:
            log_mod_level, group_character, level_default, to_stderr = LOG_GROUPS[group]
        except KeyError:
            raise RuntimeError("Unrecognized log grouping {}".format(group))

        if self.hint("log_off", default=False):
            return

        now = time.time()
        self.logs.append(
            dict(
                group=group,
                level=level,
                header=self.log_header_stack,
                time=now - self.mtime_start,
                message=" ".join(str(a) for a in args),
            )
        )

        level_limit = self.hint(
            ["log_level_{}".format(group), "log_level"], default=level_default
        )
        if not self.hint("log_print", default=True) or level > level_limit:
            return

        header_len = len(self.log_header_stack)
        prefix = "{}{} {: >6.2f} {}".format(
            level if level >= 0 else "-",
            group_character,
            now - self.mtime_start,
            "  " * header_len,
        )

        if to_stderr:
            lfile = sys.stderr
        else:
            lfile = sys.stdout

        if not self.hint("logging_use", default=False):

            def pfunc(*pargs):
                print(*pargs, file=lfile)

        else:

            def pfunc(*pargs):
                logging.log(
                    log_mod_level + 9 - max(level, 0), " ".join(str(a) for a in pargs)
                )

        if header_len > self.log_header_printed:
            pfunc("{}:{}:".format("-" * (len(prefix)), ":".join(self.log_header_stack)))
            self.log_header_printed = header_len

        arg_lines = [[]]
        for arg in args:
            if isinstance(arg, str):
                if "\n" in arg:
                    arg = padding_remove(arg)
                arg_spl = arg.split("\n")
                arg_lines[-1].append(arg_spl[0])
                for subline in arg_spl[1:]:
                    arg_lines.append([subline])
            else:
                arg_lines[-1].append(arg)

        pfunc(prefix, *arg_lines[0])
        for argsl in arg_lines[1:]:
            pfunc(" " * len(prefix), *argsl)
        return

    def log_debug(self, *args, **kwargs):
        kwargs["group"] = "debug"
        self.log(*args, **kwargs)

    def log_warn(self, *args, **kwargs):
        kwargs["group"] = "warn"
        self.log(*args, **kwargs)

    def log_alert(self, *args, **kwargs):
        kwargs["group"] = "alert"
        self.log(*args, **kwargs)

    def log_info(self, *args, **kwargs):
        kwargs["group"] = "info"
        self.log(*args, **kwargs)

    def log_progress(self, *args, **kwargs):
        kwargs["group"] = "progress"
        self.log(*args, **kwargs)

    def diagnostics(self, groups=("warn", "alert")):
        return [entry["message"] for entry in self.logs if entry["group"] in groups]

    @contextlib.contextmanager
    def log_heading(self, header):
        save_stack = self.log_header_stack
        self.log_header_stack = save_stack + (header,)
        try:
            yield
        finally:
            self.log_header_stack = save_stack
            if self.log_header_printed > len(save_stack):
                self.log_header_printed = len(save_stack)


def quiet_aid():
    return HintAid(dict(log_off=True))


def ensure_aid(aid):
    if aid is None:
        return quiet_aid()
    return aid
