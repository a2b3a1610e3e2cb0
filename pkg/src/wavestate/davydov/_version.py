#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2021 Massachusetts Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@mit.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Package version, refined from git metadata through setuptools_scm in development checkouts.
"""

version_info = (0, 1, 0, "dev0")
version = ".".join(str(v) for v in version_info)
__version__ = version

try:
    import setuptools_scm
    from packaging.version import Version

    scm_version = setuptools_scm.get_version(
        relative_to=__file__,
        root="../../../",
        fallback_version=version,
        version_scheme="guess-next-dev",
    )
    if Version(Version(scm_version).base_version) != Version(Version(version).base_version):
        import warnings

        warnings.warn(
            "git base version {} differs from the stored version {}".format(scm_version, version)
        )
    version = scm_version
    __version__ = scm_version
except (ImportError, LookupError, TypeError, ValueError):
    pass
