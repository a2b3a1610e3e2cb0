#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import argparse
from ..strings import padding_remove


def _group_order(kwdict, groups_kw):
    groups = dict()
    groups_prio = dict()
    for gname, gdict in groups_kw.items():
        APpriority = gdict.get("APpriority", None)
        if APpriority is not None:
            groups_prio[gname] = APpriority

    for hname, hdict in kwdict.items():
        if hdict.get("APignore", False):
            continue
        group = hdict.get("APgroup", None)
        groups.setdefault(group, set()).add(hname)

        gprio = groups_prio.get(group, float("inf"))
        hprio = hdict.get("APpriority", float("inf"))
        groups_prio[group] = min(gprio, hprio)

    gnames = [g for g in groups_prio.keys() if g in groups]
    gnames.sort(key=lambda g: (groups_prio[g], str(g)))
    return [(gname, groups[gname]) for gname in gnames]


def kwdict_argparse(ap, kwdict, groups_kw=dict()):
    """
    Add the entries of a hint table to an argparse parser, one argument group per APgroup.
    Unset options are suppressed from the namespace so hint defaults apply afterwards.
    """
    for gname, hset in _group_order(kwdict, groups_kw):
        if gname is None:
            apG = ap
        else:
            gkw = dict()
            ghelp = groups_kw.get(gname, dict()).get("about", None)
            if ghelp is not None:
                gkw["description"] = padding_remove(ghelp)
            apG = ap.add_argument_group(gname, **gkw)

        hlist = sorted(hset, key=lambda h: (kwdict[h].get("APpriority", float("inf")), h))
        for hname in hlist:
            hdict = kwdict[hname]
            name = hdict.get("name", hname)

            APflags = list(hdict.get("APflags", ["--{}".format(name)]))
            APshort = hdict.get("APshort", None)
            if APshort is not None:
                APflags = [APshort] + APflags

            if hdict.get("APhide", False):
                helptext = argparse.SUPPRESS
            else:
                helptext = hdict.get("about", "<needs doc>").replace("%", "%%")
                helptext = padding_remove(helptext)
            APkw = dict(
                dest=name,
                help=helptext,
            )

            for key, apkey in [
                ("APaction", "action"),
                ("APtype", "type"),
                ("APrequired", "required"),
                ("APnargs", "nargs"),
                ("APmetavar", "metavar"),
                ("APchoices", "choices"),
                ("APconst", "const"),
            ]:
                val = hdict.get(key, None)
                if val is not None:
                    APkw[apkey] = val

            APdefault = hdict.get("APdefault", None)
            if APdefault is not None:
                APkw["default"] = APdefault
            else:
                APkw["default"] = argparse.SUPPRESS

            if hdict.get("APpositional", False):
                APkw.pop("dest")
                APkw.pop("default")
                apG.add_argument(name, **APkw)
                continue

            apG.add_argument(*APflags, **APkw)
            # aliases parse too, but with their help suppressed
            APkw["help"] = argparse.SUPPRESS
            for aname in hdict.get("aliases", []):
                apG.add_argument("--{}".format(aname), **APkw)
            for aname in hdict.get("aliases_bad", []):
                apG.add_argument("--{}".format(aname), **APkw)

    return ap
