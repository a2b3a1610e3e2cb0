#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
Post-processing of trajectories: contour sweeps over (D, A_z), peak extraction,
oscillation metrics and Rabi cycle fits.
"""
import dataclasses
import numpy as np
import scipy.ndimage
import scipy.stats
import lmfit
from wavestate.bunch import Bunch

from .arguments.base import ArgumentError
from .arguments.aid import ensure_aid
from .exceptions import FitError, NumericalError
from . import bath as lzbath
from . import integrator
from . import model as lzmodel


@dataclasses.dataclass(frozen=True)
class SweepGrid(object):
    """
    D_count x Az_count grid of periodic-drive runs, each recording P_-1 at the times
    t_obs. The per-point seeds derive from propagation.seed.
    """

    D_min: float
    D_max: float
    D_count: int
    Az_min: float
    Az_max: float
    Az_count: int
    t_obs: tuple
    propagation: integrator.PropagationConfig

    def __post_init__(self):
        for name in ["D_count", "Az_count"]:
            val = getattr(self, name)
            if int(val) != val or val < 2:
                raise ArgumentError("argument {}={} must be an integer >= 2".format(name, val))
        if not (self.D_max > self.D_min):
            raise ArgumentError("D_max={} must exceed D_min={}".format(self.D_max, self.D_min))
        if not (self.Az_max > self.Az_min):
            raise ArgumentError(
                "Az_max={} must exceed Az_min={}".format(self.Az_max, self.Az_min)
            )
        t_obs = tuple(sorted(set(float(t) for t in np.atleast_1d(self.t_obs))))
        if not t_obs:
            raise ArgumentError("a sweep needs at least one observation time")
        # raises for times outside the window or off the step grid
        for t in t_obs:
            self.propagation.step_of(t)
        object.__setattr__(self, "t_obs", t_obs)

    @property
    def D_values(self):
        return np.linspace(self.D_min, self.D_max, int(self.D_count))

    @property
    def Az_values(self):
        return np.linspace(self.Az_min, self.Az_max, int(self.Az_count))

    @property
    def base_seed(self):
        return self.propagation.seed


def point_seed(base_seed, i, j):
    return int(np.random.SeedSequence(base_seed, spawn_key=(i, j)).generate_state(1)[0])


def _sweep_point(job):
    i, j, cfg, model, bath, t_obs = job
    try:
        rec = integrator.propagate(cfg, model, bath, record_times=t_obs)
    except NumericalError as e:
        return i, j, None, "{}: {}".format(e.__class__.__name__, e)
    return i, j, rec.P_m1.copy(), None


class SweepResult(object):
    """
    frames has shape (len(t_obs), D_count, Az_count); failed points are NaN and
    listed in failures.
    """

    def __init__(self, D_values, Az_values, t_obs, frames, seeds, failures):
        self.D_values = np.asarray(D_values)
        self.Az_values = np.asarray(Az_values)
        self.t_obs = tuple(t_obs)
        self.frames = np.asarray(frames)
        self.seeds = np.asarray(seeds)
        self.failures = list(failures)

    def matrix(self, frame=0):
        return self.frames[frame]

    def frame_table(self, frame=0):
        """
        (header, array) with one row per D value, first column D
        """
        header = ["D"] + ["A_z_{}".format(j) for j in range(len(self.Az_values))]
        table = np.column_stack([self.D_values, self.frames[frame]])
        return header, table

    def sidecar(self, frame=0):
        return dict(
            D=self.D_values,
            A_z=self.Az_values,
            t_obs=self.t_obs[frame],
            frame=frame,
            rows="D",
            columns="A_z",
            seeds=self.seeds,
            failures=self.failures,
            missing=len(self.failures),
        )


def sweep(grid, model, bath, mapper=map, aid=None):
    """
    Propagate from |0> at every (D_i, A_z_j) and record P_-1 at the grid times.

    Numerical failures at a point leave NaN there and are listed with their
    diagnostics; only a sweep where every point fails raises.
    """
    aid = ensure_aid(aid)
    if not model.drive.periodic:
        raise ArgumentError("contour sweeps scan A_z and need a periodic drive")
    D_values = grid.D_values
    Az_values = grid.Az_values
    t_obs = grid.t_obs
    cfg0 = dataclasses.replace(grid.propagation, t_end=max(t_obs), spin=0)

    seeds = np.empty((len(D_values), len(Az_values)), dtype=np.int64)
    jobs = []
    for i, D in enumerate(D_values):
        for j, Az in enumerate(Az_values):
            seeds[i, j] = point_seed(grid.base_seed, i, j)
            jobs.append(
                (
                    i,
                    j,
                    dataclasses.replace(cfg0, seed=int(seeds[i, j])),
                    lzmodel.with_params(model, D=float(D), A_z=float(Az)),
                    bath,
                    t_obs,
                )
            )

    aid.log_info(4, "sweeping {} points at t_obs={}".format(len(jobs), list(t_obs)))
    frames = np.full((len(t_obs), len(D_values), len(Az_values)), np.nan)
    failures = []
    for count, (i, j, values, diag) in enumerate(mapper(_sweep_point, jobs), 1):
        if values is None:
            aid.log_alert(
                3, "point D={:.6g} A_z={:.6g} failed: {}".format(D_values[i], Az_values[j], diag)
            )
            failures.append(dict(i=i, j=j, D=D_values[i], A_z=Az_values[j], error=diag))
        else:
            frames[:, i, j] = values
        aid.log_progress(4, "sweep point {}/{}".format(count, len(jobs)))

    if len(failures) == len(jobs):
        raise NumericalError(
            "every sweep point failed, first error: {}".format(failures[0]["error"])
        )
    return SweepResult(D_values, Az_values, t_obs, frames, seeds, failures)


def find_peaks(matrix, D_values, Az_values, quantile=0.5):
    """
    Local maxima over 8-neighborhoods strictly above the given quantile of the
    values. Touching maxima are merged into their highest cell. Sorted by height.
    """
    arr = np.asarray(matrix, dtype=float)
    if arr.shape != (len(D_values), len(Az_values)):
        raise ArgumentError("matrix shape {} does not match the axes".format(arr.shape))
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("peak search needs a complete matrix, found missing values")
    floor = np.quantile(arr, quantile, method="lower")
    neighborhood_max = scipy.ndimage.maximum_filter(arr, size=3, mode="constant", cval=-np.inf)
    candidates = (arr == neighborhood_max) & (arr > floor)
    labels, count = scipy.ndimage.label(candidates, structure=np.ones((3, 3)))

    peaks = []
    for lbl in range(1, count + 1):
        idxs = np.argwhere(labels == lbl)
        i, j = idxs[np.argmax(arr[idxs[:, 0], idxs[:, 1]])]
        peaks.append(
            Bunch(
                D=float(D_values[i]),
                A_z=float(Az_values[j]),
                height=float(arr[i, j]),
                index=(int(i), int(j)),
            )
        )
    peaks.sort(key=lambda p: -p.height)
    return peaks


def _window(record, t_min, t_max):
    t = record.t
    select = np.ones(len(t), dtype=bool)
    if t_min is not None:
        select &= t >= t_min - 1e-9
    if t_max is not None:
        select &= t <= t_max + 1e-9
    if not np.any(select):
        raise ArgumentError("no recorded times in [{}, {}]".format(t_min, t_max))
    return select


def oscillation_amplitude(record, t_min=None, t_max=None):
    P = record.P_m1[_window(record, t_min, t_max)]
    return float(np.max(P) - np.min(P))


def symmetry_deviation(record):
    return float(np.max(np.abs(record.P_m1 - record.P_1)))


def strip_amplitudes(
    Az_values, model, bath, cfg, offset=-1.0, t_min=None, t_max=None, mapper=map, aid=None
):
    """
    Oscillation amplitude of P_-1 along the strip D = offset + A_z.
    """
    aid = ensure_aid(aid)
    if not model.drive.periodic:
        raise ArgumentError("the strip scan varies A_z and needs a periodic drive")
    Az_values = np.asarray(Az_values, dtype=float)
    D_values = offset + Az_values
    jobs = [
        (
            dataclasses.replace(cfg, seed=point_seed(cfg.seed, 0, j), spin=0),
            lzmodel.with_params(model, D=float(D), A_z=float(Az)),
            bath,
        )
        for j, (D, Az) in enumerate(zip(D_values, Az_values))
    ]
    records = list(mapper(integrator.propagate_job, jobs))
    amplitudes = np.array([oscillation_amplitude(rec, t_min, t_max) for rec in records])
    for Az, amp in zip(Az_values, amplitudes):
        aid.log_info(4, "strip A_z={:.4g}: amplitude {:.4f}".format(Az, amp))
    return Bunch(A_z=Az_values, D=D_values, amplitude=amplitudes, records=records)


@dataclasses.dataclass(frozen=True)
class RabiFit(object):
    period: float
    amplitude: float
    phase: float
    offset: float
    residual: float
    residual_raw: float
    window: int
    t_min: float
    t_max: float
    nfev: int = 0

    def __post_init__(self):
        if not (self.period > 0):
            raise FitError("fitted period {} is not positive".format(self.period))
        if not (0 <= self.amplitude <= 1):
            raise FitError("fitted amplitude {} is outside [0, 1]".format(self.amplitude))

    def model(self, t):
        return rabi_model(t, self.period, self.amplitude, self.phase, self.offset)

    def to_dict(self):
        return dataclasses.asdict(self)


def rabi_model(t, period, amplitude, phase, offset):
    return offset + 0.5 * amplitude * (1 - np.cos(2 * np.pi * t / period + phase))


def smooth(y, window):
    if window <= 1:
        return np.asarray(y, dtype=float)
    y = np.asarray(y, dtype=float)
    return scipy.ndimage.uniform_filter1d(y, size=int(window), mode="nearest")


def spectral_guess(t, y):
    """
    Dominant nonzero frequency of the mean-removed series and the matching
    period, amplitude and phase guesses.
    """
    dt = t[1] - t[0]
    X = np.fft.rfft(y - np.mean(y))
    freqs = np.fft.rfftfreq(len(y), d=dt)
    power = np.abs(X[1:]) ** 2
    k = int(np.argmax(power)) + 1
    f0 = freqs[k]
    amplitude = 4 * np.abs(X[k]) / len(y)
    phase = np.angle(X[k]) - np.pi - 2 * np.pi * f0 * t[0]
    phase = (phase + np.pi) % (2 * np.pi) - np.pi
    return Bunch(
        frequency=float(f0),
        period=float(1 / f0),
        amplitude=float(amplitude),
        phase=float(phase),
        peak_power=float(power[k - 1]),
    )


def fit_series(t, y, window=5, aid=None):
    """
    Fit c + (a/2)(1 - cos(2 pi t / T + phi)) by least squares. Data and model are
    both smoothed with the same window-point moving average; the residual is also
    reported against the raw series.
    """
    aid = ensure_aid(aid)
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.shape != y.shape or t.ndim != 1:
        raise ArgumentError("t and y must be 1-D arrays of equal length")
    if len(t) < 8:
        raise ArgumentError("a Rabi fit needs at least 8 samples, got {}".format(len(t)))
    if int(window) != window or window < 1:
        raise ArgumentError("argument window={} must be a positive integer".format(window))
    dts = np.diff(t)
    if np.any(dts <= 0) or np.ptp(dts) > 1e-6 * dts[0]:
        raise ArgumentError("a Rabi fit needs uniformly sampled, increasing times")
    if not np.all(np.isfinite(y)):
        raise ArgumentError("series contains non-finite values")

    span = t[-1] - t[0]
    ys = smooth(y, window)
    guess = spectral_guess(t, ys)
    diag = dict(
        frequency=guess.frequency,
        period_guess=guess.period,
        peak_power=guess.peak_power,
        span=span,
    )
    if guess.period > span / 1.5:
        raise FitError("series spans fewer than 1.5 periods of its dominant frequency", diag)

    amp0 = min(max(guess.amplitude, 1e-3), 1.0)
    params = lmfit.Parameters()
    params.add("period", value=guess.period, min=0, max=span)
    params.add("amplitude", value=amp0, min=0, max=1)
    params.add("phase", value=guess.phase)
    params.add("offset", value=float(np.mean(ys)) - amp0 / 2)

    def residual(pars):
        v = pars.valuesdict()
        model = rabi_model(t, v["period"], v["amplitude"], v["phase"], v["offset"])
        return smooth(model, window) - ys

    result = lmfit.minimize(residual, params, method="leastsq", ftol=1e-12, xtol=1e-12)
    vals = result.params.valuesdict()
    if not result.success:
        raise FitError("least squares did not converge: {}".format(result.message), diag)
    if not (0 < vals["period"] < span):
        diag["period"] = vals["period"]
        raise FitError("fitted period outside the window", diag)

    phase = (vals["phase"] + np.pi) % (2 * np.pi) - np.pi
    raw = rabi_model(t, vals["period"], vals["amplitude"], phase, vals["offset"]) - y
    fit = RabiFit(
        period=float(vals["period"]),
        amplitude=float(vals["amplitude"]),
        phase=float(phase),
        offset=float(vals["offset"]),
        residual=float(np.sqrt(np.mean(result.residual ** 2))),
        residual_raw=float(np.sqrt(np.mean(raw ** 2))),
        window=int(window),
        t_min=float(t[0]),
        t_max=float(t[-1]),
        nfev=int(result.nfev),
    )
    aid.log_debug(
        6,
        "Rabi fit T={:.6g} a={:.6g} after {} evaluations".format(
            fit.period, fit.amplitude, fit.nfev
        ),
    )
    return fit


def fit_rabi(record, window=5, t_min=None, t_max=None, aid=None):
    """
    Rabi fit of P_-1 of a trajectory, optionally restricted to [t_min, t_max].
    """
    select = _window(record, t_min, t_max)
    return fit_series(record.t[select], record.P_m1[select], window=window, aid=aid)


def bath_damping_scan(
    alphas, params, model, cfg, window=5, t_min=None, t_max=None, mapper=map, aid=None
):
    """
    Discretize the spectral template at every coupling alpha, propagate, and fit
    the Rabi cycle of each trajectory.
    """
    aid = ensure_aid(aid)
    alphas = [float(a) for a in alphas]
    baths = [lzbath.discretize(dataclasses.replace(params, alpha=a), aid=aid) for a in alphas]
    records = list(mapper(integrator.propagate_job, [(cfg, model, b) for b in baths]))
    scan = []
    for alpha, rec in zip(alphas, records):
        with aid.log_heading("alpha={}".format(alpha)):
            fit = fit_rabi(rec, window=window, t_min=t_min, t_max=t_max, aid=aid)
            aid.log_info(4, "T={:.5g} a={:.5g}".format(fit.period, fit.amplitude))
        scan.append(Bunch(alpha=alpha, fit=fit, record=rec))
    return scan


def exponential_trend(x, values):
    """
    Least squares line through log(values); rate is the decay constant.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0):
        raise ArgumentError("an exponential trend needs positive values")
    if len(x) < 2 or len(x) != len(values):
        raise ArgumentError("an exponential trend needs at least two matching points")
    reg = scipy.stats.linregress(x, np.log(values))
    return Bunch(
        rate=float(-reg.slope),
        prefactor=float(np.exp(reg.intercept)),
        r_squared=float(reg.rvalue ** 2),
    )
