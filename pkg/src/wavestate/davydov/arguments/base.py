#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Validation helpers for hint tables.

A hint table maps a key to a dict with optional entries

 - mapcheck: callable(aid, aname, val) returning the converted value or raising ArgumentError
 - default: value (or callable(aid, aname)) used when the key is absent. No default means required.
 - aliases, aliases_bad: alternate names, the latter logging a deprecation warning
 - about: help text, also used by kwdict_argparse
"""
import difflib
import numbers
import numpy as np


class ArgumentError(ValueError):
    pass


# unique element to indicate a missing argument
_NOARG = lambda: _NOARG  # noqa
NOARG = ("NOARG", _NOARG)


def _is_none(val):
    if isinstance(val, str) and val.lower() in ["none", "null"]:
        return True
    return val is None


def mapcheck_bool(aid, aname, val):
    if isinstance(val, str):
        if val.lower() in ["true", "yes", "1"]:
            val = True
        elif val.lower() in ["false", "no", "0"]:
            val = False
        else:
            raise ArgumentError(
                ("Argument {} has unrecognized bool specifier {}").format(aname, val)
            )
    return bool(val)


def mapcheck_float(aid, aname, val):
    if isinstance(val, bool):
        raise ArgumentError(("argument {}={} must be a float").format(aname, val))
    try:
        val = float(val)
    except (TypeError, ValueError):
        raise ArgumentError(("argument {}={} must be a float").format(aname, val))
    if not np.isfinite(val):
        raise ArgumentError(("argument {}={} must be finite").format(aname, val))
    return val


def mapcheck_positive_float(aid, aname, val):
    val = mapcheck_float(aid, aname, val)
    if not (val > 0):
        raise ArgumentError(("argument {}={} must be positive").format(aname, val))
    return val


def mapcheck_nonnegative_float(aid, aname, val):
    val = mapcheck_float(aid, aname, val)
    if not (val >= 0):
        raise ArgumentError(("argument {}={} must be non-negative").format(aname, val))
    return val


def mapcheck_positive_float_orNone(aid, aname, val):
    if _is_none(val):
        return None
    return mapcheck_positive_float(aid, aname, val)


def mapcheck_nonnegative_float_orNone(aid, aname, val):
    if _is_none(val):
        return None
    return mapcheck_nonnegative_float(aid, aname, val)


def mapcheck_float_orNone(aid, aname, val):
    if _is_none(val):
        return None
    return mapcheck_float(aid, aname, val)


def mapcheck_int(aid, aname, val):
    if isinstance(val, bool):
        raise ArgumentError(("argument {}={} must be an integer").format(aname, val))
    if isinstance(val, numbers.Integral):
        return int(val)
    try:
        fval = float(val)
    except (TypeError, ValueError):
        raise ArgumentError(("argument {}={} must be an integer").format(aname, val))
    if not (np.isfinite(fval) and fval == int(fval)):
        raise ArgumentError(("argument {}={} must be an integer").format(aname, val))
    return int(fval)


def mapcheck_positive_int(aid, aname, val):
    val = mapcheck_int(aid, aname, val)
    if not (val > 0):
        raise ArgumentError(("argument {}={} must be positive").format(aname, val))
    return val


def mapcheck_nonnegative_int(aid, aname, val):
    val = mapcheck_int(aid, aname, val)
    if not (val >= 0):
        raise ArgumentError(("argument {}={} must be non-negative").format(aname, val))
    return val


def mapcheck_nonnegative_int_orNone(aid, aname, val):
    if _is_none(val):
        return None
    return mapcheck_nonnegative_int(aid, aname, val)


def mapcheck_seed(aid, aname, val):
    try:
        return mapcheck_nonnegative_int(aid, aname, val)
    except ArgumentError:
        raise ArgumentError(
            ("argument {}={} must be a non-negative integer seed").format(aname, val)
        )


def cplx_iIjJ(val):
    val = val.strip().replace(" ", "")
    val = val.replace("i", "j")
    val = val.replace("I", "j")
    val = val.replace("J", "j")
    return complex(val)


def mapcheck_complex(aid, aname, val):
    """
    accepts numbers, [re, im] pairs and strings such as "1+0.5i"
    """
    if isinstance(val, bool):
        raise ArgumentError(("argument {}={} must be a complex number").format(aname, val))
    try:
        if isinstance(val, str):
            val = cplx_iIjJ(val)
        elif isinstance(val, (list, tuple)):
            if len(val) != 2:
                raise ValueError()
            val = complex(float(val[0]), float(val[1]))
        else:
            val = complex(val)
    except (TypeError, ValueError):
        raise ArgumentError(("argument {}={} must be a complex number").format(aname, val))
    if not np.isfinite(val):
        raise ArgumentError(("argument {}={} must be finite").format(aname, val))
    return val


def mapcheck_float_list(aid, aname, val):
    if not isinstance(val, (list, tuple)):
        val = [val]
    return [mapcheck_float(aid, "{}[{}]".format(aname, idx), v) for idx, v in enumerate(val)]


def mapcheck_dict(aid, aname, val):
    if not isinstance(val, dict):
        raise ArgumentError(
            ("argument {} must be a mapping, got {}").format(aname, type(val).__name__)
        )
    return dict(val)


def mapcheck_choice(*choices):
    def mapcheck(aid, aname, val):
        if val not in choices:
            raise ArgumentError(
                ("argument {}={} must be one of {}").format(aname, val, list(choices))
            )
        return val

    return mapcheck


def grab_kwarg_hints(aid, kw, kwdesc):
    """
    Evaluate every entry of the hint table into the aid's hints.
    """
    for hint_name, kwmeta in kwdesc.items():
        found = _grab_kwargs(aid, kw, kwmeta, hint_name)
        if found:
            aid.hint_setdefault(hint_name, next(iter(found.values())))
        try:
            default = kwmeta["default"]
        except KeyError:
            pass
        else:
            if callable(default):
                default = default(aid, hint_name)
            aid.hint_setdefault(hint_name, default)


def grab_kwargs(aid, kw, kwdesc, argname, section=None):
    kwmeta = kwdesc[argname]
    found = _grab_kwargs(aid, kw, kwmeta, argname)
    if found:
        return next(iter(found.values()))

    try:
        default = kwmeta["default"]
    except KeyError:
        if section is None:
            raise ArgumentError("missing required argument '{}'".format(argname))
        raise ArgumentError(
            "missing required argument '{}' in section '{}'".format(argname, section)
        )
    if callable(default):
        default = default(aid, argname)
    return default


def _grab_kwargs(aid, kw, kwmeta, argname):
    pop = kwmeta.get("pop", True)
    mapcheck = kwmeta.get("mapcheck", None)
    found = {}
    # use a list to modify it from the function
    discrepancy = [False]

    def check_find(aname):
        if pop:
            val = kw.pop(aname, NOARG)
        else:
            val = kw.get(aname, NOARG)

        if val is NOARG:
            return False

        if mapcheck is not None:
            val = mapcheck(aid, aname, val)

        if found:
            if np.any(next(iter(found.values())) != val):
                discrepancy[0] = True
        found[aname] = val
        return True

    prefname = kwmeta.get("name", argname)
    check_find(prefname)

    for aname in kwmeta.get("aliases", []):
        check_find(aname)

    for aname in kwmeta.get("aliases_bad", []):
        if check_find(aname) and aid is not None:
            aid.log_warn(
                2,
                "Argument '{}' is a deprecated alias."
                " Use '{}' instead".format(aname, prefname),
            )

    if discrepancy[0]:
        kv_strs = []
        for k, v in found.items():
            kv_strs.append("{}: {}".format(k, v))
        raise ArgumentError(
            "Inconsistent values given for aliased arguments\n" + "\n".join(kv_strs)
        )

    return found


def check_remaining_arguments(kw, kwdict, section=None):
    """
    Raise ArgumentError listing every leftover key with its closest known names.
    """
    if not kw:
        return
    names = set()
    alias_map = {}
    bad_map = {}
    for hname, hdict in kwdict.items():
        name = hdict.get("name", hname)
        names.add(name)
        for alias in hdict.get("aliases", []):
            alias_map[alias] = name
        for alias in hdict.get("aliases_bad", []):
            bad_map[alias] = name

    allnames = set(names)
    allnames.update(alias_map.keys())
    allnames.update(bad_map.keys())

    k_lines = dict()
    for k in kw.keys():
        lines = []
        k_lines[k] = lines
        for match in difflib.get_close_matches(str(k), allnames, n=5):
            if match in names:
                lines.append("'{}'".format(match))
            elif match in alias_map:
                lines.append("'{}', alias for '{}'".format(match, alias_map[match]))
            else:
                lines.append(
                    "'{}', deprecated alias for '{}'".format(match, bad_map[match])
                )

    stack_lines = []
    for k, lines in sorted(k_lines.items(), key=lambda kv: str(kv[0])):
        if len(lines) > 0:
            stack_lines.append("'{}':\n\t".format(k) + "\n\t".join(lines))
        else:
            stack_lines.append("'{}': <no similar arguments recognized>".format(k))
    if section is None:
        where = ""
    else:
        where = " in section '{}'".format(section)
    raise ArgumentError(
        ("Unrecognized keys{}. Listed with potential matches below\n{}").format(
            where, "\n".join(stack_lines)
        )
    )
