#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Run configuration files.

A run configuration is a JSON object with the sections model, bath and propagation,
plus the optional sections sweep, strip, fit and levels. Every section is
described by a hint table below; keys without a default are required and
unknown keys are rejected.
"""
import json
from wavestate.bunch import Bunch

from .arguments import base as ab
from .arguments.base import ArgumentError, grab_kwargs, check_remaining_arguments
from .arguments.aid import ensure_aid
from .file_io import load_json
from . import model as lzmodel
from . import bath as lzbath
from . import integrator
from . import analysis


def mapcheck_spin(aid, aname, val):
    val = ab.mapcheck_int(aid, aname, val)
    if val not in lzmodel.SPIN_LABELS:
        raise ArgumentError(
            "argument {}={} must be one of {}".format(aname, val, list(lzmodel.SPIN_LABELS))
        )
    return val


kw_sections = Bunch(
    model=dict(mapcheck=ab.mapcheck_dict, about="anisotropy and drive"),
    bath=dict(mapcheck=ab.mapcheck_dict, about="phonon modes"),
    propagation=dict(mapcheck=ab.mapcheck_dict, about="integration window and ansatz size"),
    sweep=dict(mapcheck=ab.mapcheck_dict, default=None, about="contour sweep over (D, A_z)"),
    strip=dict(mapcheck=ab.mapcheck_dict, default=None, about="amplitudes along D = offset + A_z"),
    fit=dict(mapcheck=ab.mapcheck_dict, default=None, about="Rabi cycle fit"),
    levels=dict(mapcheck=ab.mapcheck_dict, default=None, about="truncated Fock energy levels"),
)

kw_model = Bunch(
    D=dict(mapcheck=ab.mapcheck_float, default=0.0, about="anisotropy constant"),
    drive=dict(mapcheck=ab.mapcheck_dict, about="drive section, with a type key"),
)

kw_drive = Bunch(
    type=dict(mapcheck=ab.mapcheck_choice("linear", "periodic"), aliases=["kind"]),
)

kw_drive_linear = Bunch(
    v=dict(mapcheck=ab.mapcheck_positive_float, about="scanning velocity of Omega_z = v t"),
    Delta=dict(mapcheck=ab.mapcheck_float, default=0.0, about="transverse field Omega_x"),
)

kw_drive_periodic = Bunch(
    A_z=dict(mapcheck=ab.mapcheck_float, default=0.0),
    omega_z=dict(mapcheck=ab.mapcheck_positive_float, default=1.0),
    A_x=dict(mapcheck=ab.mapcheck_float, default=0.0),
    omega_x=dict(mapcheck=ab.mapcheck_positive_float, default=1.0),
)

kw_bath = Bunch(
    mode=dict(mapcheck=ab.mapcheck_choice("single", "spectral"), default="single"),
)

kw_bath_single = Bunch(
    omega_p=dict(mapcheck=ab.mapcheck_positive_float, about="mode frequency"),
    eta_z=dict(mapcheck=ab.mapcheck_float, default=0.0),
    eta_x=dict(mapcheck=ab.mapcheck_float, default=0.0),
    f0=dict(mapcheck=ab.mapcheck_complex, default=0.0, about="initial displacement"),
)

kw_bath_spectral = Bunch(
    alpha=dict(mapcheck=ab.mapcheck_nonnegative_float, about="coupling strength"),
    s=dict(mapcheck=ab.mapcheck_positive_float, default=3.0, about="spectral exponent"),
    omega_c=dict(mapcheck=ab.mapcheck_positive_float, about="cutoff frequency"),
    omega_m=dict(mapcheck=ab.mapcheck_positive_float, about="highest discretized frequency"),
    N_b=dict(mapcheck=ab.mapcheck_positive_int, about="number of modes"),
    coupling=dict(mapcheck=ab.mapcheck_choice("z", "x"), default="z"),
)

kw_propagation = Bunch(
    M=dict(mapcheck=ab.mapcheck_positive_int, default=1, about="multiplicity"),
    dt=dict(
        mapcheck=ab.mapcheck_positive_float_orNone,
        default=None,
        about="step, defaults to 1e-3 for periodic and 5e-4 for linear drives",
    ),
    t_start=dict(mapcheck=ab.mapcheck_float, default=0.0),
    t_end=dict(mapcheck=ab.mapcheck_float),
    record_every=dict(mapcheck=ab.mapcheck_positive_int, default=10),
    noise=dict(mapcheck=ab.mapcheck_nonnegative_float, default=1e-4),
    seed=dict(mapcheck=ab.mapcheck_seed),
    norm_tolerance=dict(mapcheck=ab.mapcheck_positive_float, default=1e-6),
    n_max=dict(mapcheck=ab.mapcheck_nonnegative_int_orNone, default=None),
    eps_reg=dict(mapcheck=ab.mapcheck_nonnegative_float_orNone, default=None),
    energy=dict(mapcheck=ab.mapcheck_bool, default=False),
    spin=dict(mapcheck=mapcheck_spin, default=0, about="initially occupied spin state"),
)

kw_sweep = Bunch(
    D_min=dict(mapcheck=ab.mapcheck_float, default=-15.0),
    D_max=dict(mapcheck=ab.mapcheck_float, default=15.0),
    D_count=dict(mapcheck=ab.mapcheck_positive_int, default=41),
    Az_min=dict(mapcheck=ab.mapcheck_float, default=0.0),
    Az_max=dict(mapcheck=ab.mapcheck_float, default=5.0),
    Az_count=dict(mapcheck=ab.mapcheck_positive_int, default=21),
    t_obs=dict(
        mapcheck=ab.mapcheck_float_list,
        default=None,
        aliases=["frames"],
        about="observation times, one matrix each. Defaults to the propagation end",
    ),
)

kw_strip = Bunch(
    A_z=dict(mapcheck=ab.mapcheck_float_list),
    offset=dict(mapcheck=ab.mapcheck_float, default=-1.0),
    t_min=dict(mapcheck=ab.mapcheck_float_orNone, default=None),
    t_max=dict(mapcheck=ab.mapcheck_float_orNone, default=None),
)

kw_fit = Bunch(
    window=dict(mapcheck=ab.mapcheck_positive_int, default=5, about="moving average width"),
    t_min=dict(mapcheck=ab.mapcheck_float_orNone, default=None),
    t_max=dict(mapcheck=ab.mapcheck_float_orNone, default=None),
    alpha=dict(
        mapcheck=ab.mapcheck_float_list,
        default=None,
        about="bath couplings to scan, needs a spectral bath",
    ),
)

kw_levels = Bunch(
    n_max=dict(mapcheck=ab.mapcheck_nonnegative_int_orNone, default=None),
    t_start=dict(mapcheck=ab.mapcheck_float_orNone, default=None),
    t_end=dict(mapcheck=ab.mapcheck_float_orNone, default=None),
    count=dict(mapcheck=ab.mapcheck_positive_int, default=601),
)


def grab_section(aid, kw, kwdesc, section):
    """
    Pop every key of the hint table out of kw, then reject what remains.
    """
    kw = dict(kw)
    found = Bunch()
    for argname in kwdesc:
        found[argname] = grab_kwargs(aid, kw, kwdesc, argname, section=section)
    check_remaining_arguments(kw, kwdesc, section=section)
    return found


def parse_model(aid, kw):
    sec = grab_section(aid, kw, kw_model, "model")
    drive_kw = dict(sec.drive)
    dtype = grab_kwargs(aid, drive_kw, kw_drive, "type", section="model.drive")
    if dtype == "linear":
        d = grab_section(aid, drive_kw, kw_drive_linear, "model.drive")
        drive = lzmodel.LinearDrive(**dict(d.items()))
    else:
        d = grab_section(aid, drive_kw, kw_drive_periodic, "model.drive")
        drive = lzmodel.PeriodicDrive(**dict(d.items()))
    return lzmodel.ModelConfig(D=sec.D, drive=drive)


def parse_bath(aid, kw):
    """
    Returns (BathModes, SpectralParams or None).
    """
    kw = dict(kw)
    mode = grab_kwargs(aid, kw, kw_bath, "mode", section="bath")
    if mode == "single":
        sec = grab_section(aid, kw, kw_bath_single, "bath")
        return lzbath.single_mode(**dict(sec.items())), None
    sec = grab_section(aid, kw, kw_bath_spectral, "bath")
    params = lzbath.SpectralParams(**dict(sec.items()))
    return lzbath.discretize(params, aid=aid), params


def parse_propagation(aid, kw, model):
    sec = grab_section(aid, kw, kw_propagation, "propagation")
    if sec.dt is None:
        sec.dt = integrator.default_dt(model.drive)
    return integrator.PropagationConfig(**dict(sec.items()))


def parse_run_config(fdict, aid=None):
    """
    Validate a run configuration mapping and construct its objects.
    """
    aid = ensure_aid(aid)
    sections = grab_section(aid, ab.mapcheck_dict(aid, "config", fdict), kw_sections, None)

    model = parse_model(aid, sections.model)
    bath, spectral = parse_bath(aid, sections.bath)
    propagation = parse_propagation(aid, sections.propagation, model)

    if propagation.n_max is not None and bath.N_b != 1:
        raise ArgumentError("propagation.n_max needs a single-mode bath")

    sweep = None
    if sections.sweep is not None:
        if not model.drive.periodic:
            raise ArgumentError("the sweep section needs a periodic drive")
        sec = grab_section(aid, sections.sweep, kw_sweep, "sweep")
        if sec.t_obs is None:
            sec.t_obs = [propagation.t_end]
        grid_kw = dict(sec.items())
        grid_kw["t_obs"] = tuple(grid_kw["t_obs"])
        sweep = analysis.SweepGrid(propagation=propagation, **grid_kw)

    strip = None
    if sections.strip is not None:
        if not model.drive.periodic:
            raise ArgumentError("the strip section needs a periodic drive")
        strip = grab_section(aid, sections.strip, kw_strip, "strip")

    fit = None
    if sections.fit is not None:
        fit = grab_section(aid, sections.fit, kw_fit, "fit")
        if fit.alpha is not None:
            if spectral is None:
                raise ArgumentError("fit.alpha scans the bath coupling and needs a spectral bath")
            if any(a < 0 for a in fit.alpha):
                raise ArgumentError("fit.alpha values must be non-negative")

    levels = grab_section(aid, sections.levels or {}, kw_levels, "levels")
    if levels.n_max is None:
        levels.n_max = 2 if propagation.n_max is None else propagation.n_max
    if levels.t_start is None:
        levels.t_start = propagation.t_start
    if levels.t_end is None:
        levels.t_end = propagation.t_end
    if not (levels.t_end >= levels.t_start):
        raise ArgumentError("levels.t_end must not precede levels.t_start")

    aid.log_debug(6, "configuration parsed: {} drive, {} modes".format(model.drive.kind, bath.N_b))
    return Bunch(
        model=model,
        bath=bath,
        spectral=spectral,
        propagation=propagation,
        sweep=sweep,
        strip=strip,
        fit=fit,
        levels=levels,
    )


def load_run_config(path, aid=None):
    try:
        fdict = load_json(path)
    except json.JSONDecodeError as e:
        raise ArgumentError("{} is not valid JSON: {}".format(path, e))
    except OSError as e:
        raise ArgumentError("cannot read configuration {}: {}".format(path, e))
    return parse_run_config(fdict, aid=aid)
