#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Command line interface.

    wavestate-davydov propagate  CONFIG -o traj.csv [--oracle-out oracle.csv] [--format json]
    wavestate-davydov sweep      CONFIG -o outdir [--jobs N]
    wavestate-davydov levels     CONFIG -o levels.csv
    wavestate-davydov fit        CONFIG -o fits.json [--trajectory traj.csv] [--jobs N]
    wavestate-davydov discretize CONFIG -o modes.csv

Exit status is 0 on success, 2 for invalid configurations or arguments and 3 when
a numerical computation fails. Outputs are only written once everything they
depend on has been computed.
"""
import os
import sys
import argparse
import contextlib
import concurrent.futures
import numpy as np
from wavestate.bunch import Bunch

from .arguments import (
    ArgumentError,
    HintAid,
    grab_kwargs,
    grab_kwarg_hints,
    kwdict_argparse,
)
from .arguments.base import mapcheck_choice
from .arguments import logging as arg_logging
from .exceptions import NumericalError
from .file_io import write_csv, write_json, load_csv
from .strings import table
from . import config as lzconfig
from . import integrator
from . import oracle
from . import analysis
from . import bath as lzbath

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_NUMERICAL = 3


def mc_path(aid, aname, val):
    if not isinstance(val, str) or not val:
        raise ArgumentError("argument {}={} must be a path".format(aname, val))
    return val


def mc_jobs(aid, aname, val):
    val = int(val)
    if val < 1:
        raise ArgumentError("argument {}={} must be at least 1".format(aname, val))
    return val


kw_cli = Bunch(
    config=dict(
        APpositional=True,
        APpriority=1,
        mapcheck=mc_path,
        about="JSON run configuration",
    ),
    out=dict(
        APshort="-o",
        APpriority=2,
        mapcheck=mc_path,
        about="output path (a directory for sweep)",
    ),
    jobs=dict(
        APshort="-j",
        APpriority=3,
        APtype=int,
        mapcheck=mc_jobs,
        default=1,
        about="worker processes for independent trajectories",
    ),
    oracle_out=dict(
        APflags=["--oracle-out"],
        APpriority=4,
        mapcheck=mc_path,
        default=None,
        about="also write the truncated Fock reference trajectory (single-mode baths)",
    ),
    format=dict(
        APpriority=4,
        APchoices=["csv", "json"],
        mapcheck=mapcheck_choice("csv", "json"),
        default="csv",
        about="trajectory file format",
    ),
    trajectory=dict(
        APpriority=4,
        mapcheck=mc_path,
        default=None,
        about="fit an existing trajectory CSV instead of propagating",
    ),
)

command_options = dict(
    propagate=["config", "out", "oracle_out", "format"],
    sweep=["config", "out", "jobs"],
    levels=["config", "out"],
    fit=["config", "out", "jobs", "trajectory"],
    discretize=["config", "out"],
)

command_about = dict(
    propagate="propagate one multi-D2 trajectory",
    sweep="contour sweep over (D, A_z) and the amplitude strip",
    levels="energy levels of the truncated single-mode Hamiltonian",
    fit="Rabi cycle fits, optionally scanning the bath coupling",
    discretize="discretize the spectral density into bath modes",
)


@contextlib.contextmanager
def worker_mapper(jobs):
    if jobs <= 1:
        yield map
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
        yield executor.map


def _write_trajectory(fname, record, fmt):
    if fmt == "json":
        write_json(fname, record.to_dict())
    else:
        write_csv(fname, record.header(), record.table())


def cmd_propagate(aid, opts, cfg):
    record = integrator.propagate(cfg.propagation, cfg.model, cfg.bath, aid=aid)
    if cfg.model.drive.periodic:
        aid.log_info(5, "max |P_-1 - P_1| = {:.3e}".format(analysis.symmetry_deviation(record)))

    ref_record = None
    if opts.oracle_out is not None:
        prop = cfg.propagation
        with aid.log_heading("oracle"):
            ref = oracle.exact_propagate(
                cfg.model,
                cfg.bath,
                oracle.TruncatedBasis(0),
                t_grid=record.t,
                dt=prop.dt / 4,
                spin=prop.spin,
                aid=aid,
            )
        fock = None
        if prop.n_max is not None:
            fock = np.zeros((len(ref.t), 3, prop.n_max + 1))
            n_keep = min(prop.n_max, ref.n_max) + 1
            fock[:, :, :n_keep] = ref.fock[:, :, :n_keep]
        ref_record = integrator.TrajectoryRecord(
            t=ref.t, P=ref.P, norm=ref.norm, fock=fock, meta=dict(n_max=ref.n_max)
        )
        diffs = oracle.compare(record, ref_record)
        aid.log_info(
            4,
            "reference n_max={}, max |dP| per spin (-1, 0, 1): {}".format(
                ref.n_max, ", ".join("{:.3e}".format(d) for d in diffs)
            ),
        )

    _write_trajectory(opts.out, record, opts.format)
    if ref_record is not None:
        _write_trajectory(opts.oracle_out, ref_record, opts.format)
    return EXIT_OK


def cmd_sweep(aid, opts, cfg):
    if cfg.sweep is None and cfg.strip is None:
        raise ArgumentError("sweep needs a sweep or strip section in the configuration")

    with worker_mapper(opts.jobs) as mapper:
        result = None
        if cfg.sweep is not None:
            with aid.log_heading("sweep"):
                result = analysis.sweep(cfg.sweep, cfg.model, cfg.bath, mapper=mapper, aid=aid)
        strip = None
        if cfg.strip is not None:
            with aid.log_heading("strip"):
                strip = analysis.strip_amplitudes(
                    cfg.strip.A_z,
                    cfg.model,
                    cfg.bath,
                    cfg.propagation,
                    offset=cfg.strip.offset,
                    t_min=cfg.strip.t_min,
                    t_max=cfg.strip.t_max,
                    mapper=mapper,
                    aid=aid,
                )

    os.makedirs(opts.out, exist_ok=True)
    if result is not None:
        for k in range(len(result.t_obs)):
            header, arr = result.frame_table(k)
            sidecar = result.sidecar(k)
            matrix = result.matrix(k)
            if np.all(np.isfinite(matrix)):
                sidecar["peaks"] = [
                    dict(D=p.D, A_z=p.A_z, height=p.height)
                    for p in analysis.find_peaks(matrix, result.D_values, result.Az_values)
                ]
            sidecar["diagnostics"] = aid.diagnostics()
            write_csv(os.path.join(opts.out, "frame_{:03d}.csv".format(k)), header, arr)
            write_json(os.path.join(opts.out, "frame_{:03d}.json".format(k)), sidecar)
        if result.failures:
            aid.log_warn(
                2,
                "{} of {} sweep points failed and are missing from the frames".format(
                    len(result.failures), result.frames.shape[1] * result.frames.shape[2]
                ),
            )

    if strip is not None:
        for j, rec in enumerate(strip.records):
            fname = os.path.join(opts.out, "strip_{:03d}.csv".format(j))
            write_csv(fname, rec.header(), rec.table())
        write_json(
            os.path.join(opts.out, "strip.json"),
            dict(
                A_z=strip.A_z,
                D=strip.D,
                amplitude=strip.amplitude,
                offset=cfg.strip.offset,
                t_min=cfg.strip.t_min,
                t_max=cfg.strip.t_max,
                seed=cfg.propagation.seed,
            ),
        )
        aid.log_info(
            4,
            "\n" + table(list(zip(strip.A_z, strip.D, strip.amplitude)), ["A_z", "D", "amplitude"]),
        )
    return EXIT_OK


def cmd_levels(aid, opts, cfg):
    lv = cfg.levels
    basis = oracle.TruncatedBasis(lv.n_max)
    t_grid = np.linspace(lv.t_start, lv.t_end, lv.count)
    levels = oracle.energy_levels(cfg.model, cfg.bath, basis, t_grid)
    header = ["t"] + ["E_{}".format(idx + 1) for idx in range(basis.dimension)]
    write_csv(opts.out, header, np.column_stack([t_grid, levels]))
    return EXIT_OK


def _trajectory_from_csv(path):
    try:
        fdict = load_csv(path)
    except (OSError, ValueError) as e:
        raise ArgumentError("cannot read trajectory {}: {}".format(path, e))
    missing = [c for c in ["t", "P_m1", "P_0", "P_1"] if c not in fdict.columns]
    if missing:
        raise ArgumentError("trajectory {} lacks the columns {}".format(path, missing))
    norm = fdict["norm"] if "norm" in fdict.columns else np.ones_like(fdict.t)
    return integrator.TrajectoryRecord(
        t=fdict.t,
        P=np.column_stack([fdict.P_m1, fdict.P_0, fdict.P_1]),
        norm=norm,
    )


def cmd_fit(aid, opts, cfg):
    fit_cfg = cfg.fit
    if fit_cfg is None:
        fit_cfg = lzconfig.grab_section(aid, {}, lzconfig.kw_fit, "fit")
    fit_kw = dict(window=fit_cfg.window, t_min=fit_cfg.t_min, t_max=fit_cfg.t_max, aid=aid)

    records = []
    if opts.trajectory is not None:
        rec = _trajectory_from_csv(opts.trajectory)
        fit = analysis.fit_rabi(rec, **fit_kw)
        records.append(dict(fit.to_dict(), source=opts.trajectory))
    elif fit_cfg.alpha is not None:
        with worker_mapper(opts.jobs) as mapper:
            scan = analysis.bath_damping_scan(
                fit_cfg.alpha, cfg.spectral, cfg.model, cfg.propagation, mapper=mapper, **fit_kw
            )
        for entry in scan:
            records.append(dict(entry.fit.to_dict(), alpha=entry.alpha))
        aid.log_info(
            4,
            "\n"
            + table(
                [(e.alpha, e.fit.period, e.fit.amplitude, e.fit.residual) for e in scan],
                ["alpha", "period", "amplitude", "residual"],
            ),
        )
        alphas = [e.alpha for e in scan]
        for name in ["amplitude", "period"]:
            values = [getattr(e.fit, name) for e in scan]
            if len(values) >= 2 and min(values) > 0:
                trend = analysis.exponential_trend(alphas, values)
                aid.log_info(
                    4,
                    "{} decay rate {:.4g} (r^2 = {:.4f})".format(name, trend.rate, trend.r_squared),
                )
    else:
        rec = integrator.propagate(cfg.propagation, cfg.model, cfg.bath, aid=aid)
        fit = analysis.fit_rabi(rec, **fit_kw)
        entry = fit.to_dict()
        if cfg.spectral is not None:
            entry["alpha"] = cfg.spectral.alpha
        records.append(entry)

    write_json(opts.out, records, cull=True)
    return EXIT_OK


def cmd_discretize(aid, opts, cfg):
    if cfg.spectral is None:
        raise ArgumentError("discretize needs a spectral bath (bath.mode = 'spectral')")
    header, arr = lzbath.mode_table(cfg.bath)
    aid.log_info(
        5,
        "sum eta^2 = {:.6g}, continuum value {:.6g}".format(
            lzbath.reorganization(cfg.bath), lzbath.coupling_integral(cfg.spectral)
        ),
    )
    write_csv(opts.out, header, arr)
    return EXIT_OK


commands = dict(
    propagate=cmd_propagate,
    sweep=cmd_sweep,
    levels=cmd_levels,
    fit=cmd_fit,
    discretize=cmd_discretize,
)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="wavestate-davydov",
        description="Multi-D2 dynamics of a driven spin-1 system coupled to phonons",
    )
    subparsers = ap.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for name, options in command_options.items():
        sp = subparsers.add_parser(name, help=command_about[name], description=command_about[name])
        kwdict_argparse(sp, Bunch({k: kw_cli[k] for k in options}))
        kwdict_argparse(sp, arg_logging.kw_hints)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    kw = dict(vars(args))
    command = kw.pop("command")

    aid = HintAid()
    try:
        grab_kwarg_hints(aid, kw, arg_logging.kw_hints)
        opts = Bunch()
        for name in command_options[command]:
            opts[name] = grab_kwargs(aid, kw, kw_cli, name)
        cfg = lzconfig.load_run_config(opts.config, aid=aid)
        return commands[command](aid, opts, cfg)
    except ArgumentError as e:
        print("{}: invalid configuration: {}".format(command, e), file=sys.stderr)
        return EXIT_ARGUMENT
    except NumericalError as e:
        print("{}: numerical failure: {}".format(command, e), file=sys.stderr)
        return EXIT_NUMERICAL
