#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Fixed step RK4 propagation of multi-D2 states.
"""
import dataclasses
import numpy as np
from wavestate.bunch import Bunch

from .arguments.base import ArgumentError
from .arguments.aid import ensure_aid
from .exceptions import NormDriftError, StateError
from . import ansatz
from . import eom
from . import model as lzmodel


def default_dt(drive):
    if drive.periodic:
        return 1e-3
    return 5e-4


@dataclasses.dataclass(frozen=True)
class PropagationConfig(object):
    t_end: float
    dt: float
    seed: int
    t_start: float = 0.0
    record_every: int = 10
    eps_reg: float = None
    noise: float = 1e-4
    M: int = 1
    norm_tolerance: float = 1e-6
    n_max: int = None
    energy: bool = False
    spin: int = 0

    def __post_init__(self):
        if not (self.dt > 0):
            raise ArgumentError("argument dt={} must be positive".format(self.dt))
        if not (self.t_end > self.t_start):
            raise ArgumentError(
                "t_end={} must be greater than t_start={}".format(self.t_end, self.t_start)
            )
        if not (self.norm_tolerance > 0):
            raise ArgumentError(
                "argument norm_tolerance={} must be positive".format(self.norm_tolerance)
            )
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ArgumentError(
                "argument record_every={} must be a positive integer".format(self.record_every)
            )
        if int(self.M) != self.M or self.M < 1:
            raise ArgumentError("argument M={} must be a positive integer".format(self.M))
        if not (self.noise >= 0):
            raise ArgumentError("argument noise={} must be non-negative".format(self.noise))
        if self.seed is None or int(self.seed) != self.seed or self.seed < 0:
            raise ArgumentError("argument seed={} must be a non-negative integer".format(self.seed))
        if self.eps_reg is not None and not (self.eps_reg >= 0):
            raise ArgumentError("argument eps_reg={} must be non-negative".format(self.eps_reg))
        if self.n_max is not None and (int(self.n_max) != self.n_max or self.n_max < 0):
            raise ArgumentError(
                "argument n_max={} must be a non-negative integer".format(self.n_max)
            )
        lzmodel.spin_index(self.spin)
        steps = (self.t_end - self.t_start) / self.dt
        if abs(steps - round(steps)) > 1e-6 * max(1.0, steps):
            raise ArgumentError(
                "propagation window [{}, {}] is not a whole number of steps dt={}".format(
                    self.t_start, self.t_end, self.dt
                )
            )

    @property
    def n_steps(self):
        return int(round((self.t_end - self.t_start) / self.dt))

    def time_of(self, step):
        return self.t_start + step * self.dt

    def step_of(self, t):
        """
        step index of time t, which must lie on the step grid
        """
        steps = (t - self.t_start) / self.dt
        step = int(round(steps))
        if abs(steps - step) > 1e-6 * max(1.0, abs(steps)) or step < 0 or step > self.n_steps:
            raise ArgumentError(
                "time {} is not on the step grid of [{}, {}] with dt={}".format(
                    t, self.t_start, self.t_end, self.dt
                )
            )
        return step


def rk4_step(deriv, y, t, dt):
    """
    Classical fourth order Runge-Kutta step for dy/dt = deriv(t, y).
    """
    k1 = deriv(t, y)
    k2 = deriv(t + dt / 2, y + dt / 2 * k1)
    k3 = deriv(t + dt / 2, y + dt / 2 * k2)
    k4 = deriv(t + dt, y + dt * k3)
    return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def step(state, model, bath, t, dt, eps_reg=None):
    M, N_b = state.M, state.N_b

    def deriv(tt, y):
        return eom.time_derivative(
            ansatz.MultiD2State.unpack(y, M, N_b, tt), model, bath, tt, eps_reg
        )

    y = rk4_step(deriv, state.pack(), t, dt)
    if not np.all(np.isfinite(y)):
        raise StateError("state is not finite after the step at t={:.6g}".format(t))
    return ansatz.MultiD2State.unpack(y, M, N_b, t + dt)


class TrajectoryRecord(object):
    """
    Recorded observables of one propagation. P has columns ordered (-1, 0, 1); fock,
    when recorded, has shape (len(t), 3, n_max + 1).
    """

    def __init__(self, t, P, norm, energy=None, fock=None, final_state=None, meta=None):
        self.t = np.asarray(t, dtype=float)
        self.P = np.asarray(P, dtype=float).reshape(-1, 3)
        self.norm = np.asarray(norm, dtype=float)
        self.energy = None if energy is None else np.asarray(energy, dtype=float)
        self.fock = None if fock is None else np.asarray(fock, dtype=float)
        self.final_state = final_state
        self.meta = Bunch() if meta is None else Bunch(meta)

    @classmethod
    def from_observables(cls, records, final_state=None, meta=None):
        energy = None
        if records and records[0].energy is not None:
            energy = [r.energy for r in records]
        fock = None
        if records and records[0].fock is not None:
            fock = [r.fock for r in records]
        return cls(
            t=[r.t for r in records],
            P=[r.P for r in records],
            norm=[r.norm for r in records],
            energy=energy,
            fock=fock,
            final_state=final_state,
            meta=meta,
        )

    @property
    def P_m1(self):
        return self.P[:, 0]

    @property
    def P_0(self):
        return self.P[:, 1]

    @property
    def P_1(self):
        return self.P[:, 2]

    def __len__(self):
        return len(self.t)

    def header(self):
        header = ["t", "P_m1", "P_0", "P_1", "norm"]
        if self.energy is not None:
            header.append("E")
        if self.fock is not None:
            for name in lzmodel.SPIN_NAMES:
                for n in range(self.fock.shape[2]):
                    header.append("P_{}_{}".format(name, n))
        return header

    def table(self):
        cols = [self.t[:, None], self.P, self.norm[:, None]]
        if self.energy is not None:
            cols.append(self.energy[:, None])
        if self.fock is not None:
            cols.append(self.fock.reshape(len(self.t), -1))
        return np.hstack(cols)

    def to_dict(self):
        fdict = dict(zip(self.header(), self.table().T))
        fdict["meta"] = dict(self.meta)
        return fdict


def _record_steps(cfg, record_times):
    if record_times is None:
        steps = set(range(0, cfg.n_steps + 1, int(cfg.record_every)))
        steps.add(cfg.n_steps)
        return steps
    return set(cfg.step_of(t) for t in record_times)


def propagate(cfg, model, bath, initial=None, record_times=None, aid=None):
    """
    Propagate from the configured initial state (or initial) over the configured window.

    Records every cfg.record_every steps and at the final step, or exactly at
    record_times when given. Raises NormDriftError when the norm leaves
    cfg.norm_tolerance of its initial value.
    """
    aid = ensure_aid(aid)
    if cfg.n_max is not None and bath.N_b != 1:
        raise ArgumentError("n_max recording needs a single-mode bath")

    if initial is None:
        state = ansatz.initial_state(cfg.spin, bath, cfg.M, cfg.noise, cfg.seed)
    else:
        state = initial.copy()
        if state.N_b != bath.N_b:
            raise ArgumentError("initial state and bath disagree on the number of modes")
    state.t = cfg.t_start

    if cfg.noise == 0 and state.M > 1 and initial is None:
        aid.log_warn(
            4,
            "noise=0 with M={} leaves identical branches, the solve is rank deficient".format(
                state.M
            ),
        )

    record_steps = _record_steps(cfg, record_times)
    n_record = len(record_steps)

    def observe(st):
        return ansatz.observables(st, model, bath, n_max=cfg.n_max, energy=cfg.energy)

    records = []
    if 0 in record_steps:
        records.append(observe(state))

    N0 = ansatz.norm(state)
    drift_max = 0.0
    aid.log_info(
        6,
        "propagating M={} N_b={} over [{}, {}] in {} steps".format(
            state.M, state.N_b, cfg.t_start, cfg.t_end, cfg.n_steps
        ),
    )
    for idx in range(1, cfg.n_steps + 1):
        state = step(state, model, bath, cfg.time_of(idx - 1), cfg.dt, cfg.eps_reg)
        state.t = cfg.time_of(idx)
        drift = abs(ansatz.norm(state) - N0)
        drift_max = max(drift_max, drift)
        if drift > cfg.norm_tolerance:
            aid.log_alert(2, "norm drift {:.3e} at t={:.6g}".format(drift, state.t))
            raise NormDriftError(state.t, drift, cfg.norm_tolerance)
        if idx in record_steps:
            records.append(observe(state))
            if len(records) % 50 == 0:
                aid.log_progress(
                    7, "t={:.4g} ({}/{} records)".format(state.t, len(records), n_record)
                )

    meta = Bunch(
        M=state.M,
        N_b=state.N_b,
        seed=cfg.seed,
        dt=cfg.dt,
        norm_drift=drift_max,
    )
    aid.log_info(6, "finished, maximum norm drift {:.3e}".format(drift_max))
    return TrajectoryRecord.from_observables(records, final_state=state, meta=meta)


def propagate_job(job):
    """
    picklable wrapper for worker pools, job = (cfg, model, bath[, record_times])
    """
    return propagate(*job)


def convergence_in_M(cfg, model, bath, delta=2, tol=5e-3, mapper=map, aid=None):
    """
    Run multiplicity M and M + delta; converged when max_t |P_-1 change| < tol.
    """
    aid = ensure_aid(aid)
    cfg2 = dataclasses.replace(cfg, M=cfg.M + delta)
    rec1, rec2 = mapper(propagate_job, [(cfg, model, bath), (cfg2, model, bath)])
    diff = float(np.max(np.abs(rec1.P_m1 - rec2.P_m1)))
    converged = diff < tol
    msg = "M={} vs M={}: max |dP_-1| = {:.3e}".format(cfg.M, cfg2.M, diff)
    if converged:
        aid.log_info(4, msg)
    else:
        aid.log_alert(3, msg + ", not converged")
    return Bunch(
        converged=converged,
        max_diff=diff,
        M=(cfg.M, cfg2.M),
        records=(rec1, rec2),
    )


def convergence_in_dt(cfg, model, bath, tol=1e-4, mapper=map, aid=None):
    """
    Run dt and dt / 2; converged when max_t P_-1 changes by less than tol.
    """
    aid = ensure_aid(aid)
    cfg2 = dataclasses.replace(cfg, dt=cfg.dt / 2, record_every=2 * cfg.record_every)
    rec1, rec2 = mapper(propagate_job, [(cfg, model, bath), (cfg2, model, bath)])
    diff = float(abs(np.max(rec1.P_m1) - np.max(rec2.P_m1)))
    pointwise = float(np.max(np.abs(rec1.P_m1 - rec2.P_m1)))
    converged = diff < tol
    msg = "dt={:.3g} vs dt={:.3g}: max P_-1 changes {:.3e} (pointwise {:.3e})".format(
        cfg.dt, cfg2.dt, diff, pointwise
    )
    if converged:
        aid.log_info(4, msg)
    else:
        aid.log_alert(3, msg + ", not converged")
    return Bunch(
        converged=converged,
        max_diff=diff,
        pointwise_diff=pointwise,
        dt=(cfg.dt, cfg2.dt),
        records=(rec1, rec2),
    )
