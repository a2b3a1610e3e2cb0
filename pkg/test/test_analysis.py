#!/usr/bin/env python
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2022 California Institute of Technology.
# SPDX-FileCopyrightText: © 2021 Lee McCuller <mcculler@caltech.edu>
# NOTICE: authors should document their contributions in concisely in NOTICE
# with details inline in source files, comments, and docstrings.
"""
"""
import numpy as np
import numpy.testing as npt
import pytest

from wavestate.davydov import analysis, integrator, bath, model
from wavestate.davydov.integrator import PropagationConfig, TrajectoryRecord
from wavestate.davydov.arguments import ArgumentError, HintAid
from wavestate.davydov.exceptions import FitError, NumericalError, NormDriftError


def synthetic(t, period=3.7, amplitude=0.8, phase=0.3, offset=0.05):
    return analysis.rabi_model(t, period, amplitude, phase, offset)


def test_fit_exact_series():
    t = np.linspace(0, 20, 401)
    fit = analysis.fit_series(t, synthetic(t))
    npt.assert_allclose(fit.period, 3.7, rtol=1e-6)
    npt.assert_allclose(fit.amplitude, 0.8, rtol=1e-6)
    npt.assert_allclose(fit.offset, 0.05, atol=1e-6)
    npt.assert_allclose(fit.phase, 0.3, atol=1e-5)
    assert fit.residual < 1e-8
    assert fit.residual_raw < 1e-6
    assert fit.window == 5
    assert fit.to_dict()["t_max"] == 20

    refit = analysis.fit_series(t, synthetic(t))
    assert refit == fit


def test_fit_with_ripple():
    t = np.linspace(0, 20, 401)
    y = synthetic(t) + 0.02 * np.sin(2 * np.pi * 5 * t)
    fit = analysis.fit_series(t, y, window=5)
    npt.assert_allclose(fit.period, 3.7, rtol=1e-2)
    npt.assert_allclose(fit.amplitude, 0.8, rtol=1e-2)
    assert fit.residual_raw > fit.residual


def test_fit_errors():
    t = np.linspace(0, 2, 41)
    with pytest.raises(FitError) as info:
        analysis.fit_series(t, synthetic(t))
    assert info.value.diagnostic["span"] == 2

    t = np.linspace(0, 20, 401)
    t_bad = t.copy()
    t_bad[5] += 0.01
    with pytest.raises(ArgumentError):
        analysis.fit_series(t_bad, synthetic(t))
    with pytest.raises(ArgumentError):
        analysis.fit_series(t[:5], synthetic(t[:5]))
    y = synthetic(t)
    y[3] = np.nan
    with pytest.raises(ArgumentError):
        analysis.fit_series(t, y)
    with pytest.raises(ArgumentError):
        analysis.fit_series(t, synthetic(t), window=0)


def test_spectral_guess():
    t = np.arange(800) * 0.05
    guess = analysis.spectral_guess(t, synthetic(t, period=4.0))
    npt.assert_allclose(guess.period, 4.0, rtol=1e-6)
    npt.assert_allclose(guess.amplitude, 0.8, rtol=5e-2)


def make_record(t, P_m1, P_1=None):
    P_1 = np.zeros_like(P_m1) if P_1 is None else P_1
    P = np.column_stack([P_m1, 1 - P_m1 - P_1, P_1])
    return TrajectoryRecord(t=t, P=P, norm=np.ones_like(t))


def test_fit_rabi_window():
    t = np.linspace(0, 40, 801)
    y = np.where(t < 10, 0.0, synthetic(t))
    rec = make_record(t, y)
    fit = analysis.fit_rabi(rec, t_min=10, t_max=40)
    npt.assert_allclose(fit.period, 3.7, rtol=1e-4)
    npt.assert_allclose(fit.t_min, 10)
    with pytest.raises(ArgumentError):
        analysis.fit_rabi(rec, t_min=50)


def test_oscillation_metrics():
    t = np.linspace(0, 10, 101)
    rec = make_record(t, 0.2 + 0.1 * np.sin(t), 0.2 + 0.1 * np.sin(t) + 0.01 * (t > 5))
    npt.assert_allclose(analysis.oscillation_amplitude(rec), 0.2, atol=2e-3)
    npt.assert_allclose(analysis.oscillation_amplitude(rec, 0, np.pi / 2), 0.1, atol=1e-3)
    npt.assert_allclose(analysis.symmetry_deviation(rec), 0.01)


def test_find_peaks_single_bump():
    D = np.linspace(-15, 15, 31)
    Az = np.linspace(0, 5, 11)
    mat = np.exp(-((D[:, None] - 3) ** 2) / 18 - (Az[None, :] - 2) ** 2 / 2)
    peaks = analysis.find_peaks(mat, D, Az)
    assert len(peaks) == 1
    assert peaks[0].D == 3 and peaks[0].A_z == 2
    assert peaks[0].index == (18, 4)
    npt.assert_allclose(peaks[0].height, 1)


def test_find_peaks_flat_and_errors():
    D = np.linspace(-1, 1, 5)
    Az = np.linspace(0, 1, 4)
    assert analysis.find_peaks(np.full((5, 4), 0.3), D, Az) == []
    mat = np.zeros((5, 4))
    mat[2, 2] = np.nan
    with pytest.raises(ArgumentError):
        analysis.find_peaks(mat, D, Az)
    with pytest.raises(ArgumentError):
        analysis.find_peaks(np.zeros((4, 5)), D, Az)


def test_find_peaks_plateau_and_order():
    D = np.arange(10.0)
    Az = np.arange(10.0)
    mat = np.zeros((10, 10))
    mat[5, 5] = mat[5, 6] = 1.0
    mat[1, 1] = 0.5
    peaks = analysis.find_peaks(mat, D, Az)
    assert [p.index for p in peaks] == [(5, 5), (1, 1)]
    assert [p.height for p in peaks] == [1.0, 0.5]

    # monotone rescaling keeps the peak locations
    rescaled = analysis.find_peaks(2 + 3 * mat ** 3, D, Az)
    assert [p.index for p in rescaled] == [p.index for p in peaks]


def test_exponential_trend():
    x = np.array([0, 0.05, 0.1, 0.15, 0.2])
    trend = analysis.exponential_trend(x, 2 * np.exp(-3 * x))
    npt.assert_allclose(trend.rate, 3)
    npt.assert_allclose(trend.prefactor, 2)
    npt.assert_allclose(trend.r_squared, 1)
    with pytest.raises(ArgumentError):
        analysis.exponential_trend(x, -np.ones(5))
    with pytest.raises(ArgumentError):
        analysis.exponential_trend([0.0], [1.0])


def test_point_seed():
    assert analysis.point_seed(7, 0, 1) == analysis.point_seed(7, 0, 1)
    assert analysis.point_seed(7, 0, 1) != analysis.point_seed(7, 1, 0)
    assert analysis.point_seed(7, 0, 1) != analysis.point_seed(8, 0, 1)


def small_grid(**kwargs):
    prop = PropagationConfig(t_end=0.1, dt=1e-3, seed=11)
    kw = dict(
        D_min=-1.0, D_max=1.0, D_count=2, Az_min=0.0, Az_max=1.0, Az_count=2, t_obs=(0.1, 0.05)
    )
    kw.update(kwargs)
    return analysis.SweepGrid(propagation=prop, **kw)


def test_sweep_grid_validation():
    grid = small_grid()
    assert grid.t_obs == (0.05, 0.1)
    npt.assert_allclose(grid.D_values, [-1, 1])
    assert grid.base_seed == 11
    with pytest.raises(ArgumentError):
        small_grid(D_count=1)
    with pytest.raises(ArgumentError):
        small_grid(Az_max=0.0)
    with pytest.raises(ArgumentError):
        small_grid(t_obs=(0.0505,))
    with pytest.raises(ArgumentError):
        small_grid(t_obs=(0.2,))


# without a transverse field the populations never leave |0>
LONGITUDINAL = model.ModelConfig(D=0.0, drive=model.PeriodicDrive(A_z=0.0, omega_z=10.0))


def test_sweep_small():
    grid = small_grid()
    result = analysis.sweep(grid, LONGITUDINAL, bath.single_mode(1.0))
    assert result.frames.shape == (2, 2, 2)
    assert result.failures == []
    assert np.all(result.frames >= 0)
    assert np.all(result.frames < 1e-6)
    assert result.seeds.shape == (2, 2)
    assert result.seeds[0, 1] == analysis.point_seed(11, 0, 1)

    again = analysis.sweep(grid, LONGITUDINAL, bath.single_mode(1.0))
    npt.assert_array_equal(result.frames, again.frames)

    header, table = result.frame_table(1)
    assert header == ["D", "A_z_0", "A_z_1"]
    npt.assert_allclose(table[:, 0], [-1, 1])
    sidecar = result.sidecar(1)
    assert sidecar["t_obs"] == 0.1
    assert sidecar["rows"] == "D"


def test_sweep_failures(monkeypatch):
    propagate = integrator.propagate

    def failing(cfg, model, bath, **kwargs):
        if model.D > 0:
            raise NormDriftError(0.01, 1.0, cfg.norm_tolerance)
        return propagate(cfg, model, bath, **kwargs)

    monkeypatch.setattr(integrator, "propagate", failing)
    aid = HintAid(dict(log_print=False))
    result = analysis.sweep(small_grid(), LONGITUDINAL, bath.single_mode(1.0), aid=aid)
    assert len(result.failures) == 2
    assert all(f["D"] == 1 for f in result.failures)
    assert np.all(np.isnan(result.frames[:, 1, :]))
    assert np.all(np.isfinite(result.frames[:, 0, :]))
    assert "NormDriftError" in result.failures[0]["error"]
    assert len(aid.diagnostics()) == 2
    assert result.sidecar(0)["missing"] == 2

    def always(cfg, model, bath, **kwargs):
        raise NormDriftError(0.01, 1.0, cfg.norm_tolerance)

    monkeypatch.setattr(integrator, "propagate", always)
    with pytest.raises(NumericalError):
        analysis.sweep(small_grid(), LONGITUDINAL, bath.single_mode(1.0))


def test_linear_drive_rejected():
    lz = model.ModelConfig(D=10.0, drive=model.LinearDrive(v=1.0))
    cfg = PropagationConfig(t_end=0.1, dt=1e-3, seed=0)
    with pytest.raises(ArgumentError):
        analysis.sweep(small_grid(), lz, bath.single_mode(1.0))
    with pytest.raises(ArgumentError):
        analysis.strip_amplitudes([0.0], lz, bath.single_mode(1.0), cfg)


def test_strip_amplitudes():
    cfg = PropagationConfig(t_end=0.5, dt=1e-3, seed=5, record_every=10)
    drive = model.ModelConfig(D=0.0, drive=model.PeriodicDrive(A_x=0.1, omega_x=10.0))
    strip = analysis.strip_amplitudes([0.0, 0.5], drive, bath.single_mode(1.0), cfg)
    npt.assert_allclose(strip.D, [-1.0, -0.5])
    assert strip.amplitude.shape == (2,)
    assert np.all(strip.amplitude >= 0)
    assert np.all(strip.amplitude < 0.1)
    assert len(strip.records) == 2
    assert strip.records[1].meta.seed == analysis.point_seed(5, 0, 1)


def test_bath_damping_scan(monkeypatch):
    t = np.linspace(0, 20, 401)

    def damped(cfg, model, modes, record_times=None, aid=None):
        amplitude = 0.8 / (1 + 10 * modes.params.alpha)
        P_m1 = synthetic(t, amplitude=amplitude)
        P = np.column_stack([P_m1, 1 - P_m1, np.zeros_like(t)])
        return TrajectoryRecord(t=t, P=P, norm=np.ones_like(t))

    monkeypatch.setattr(integrator, "propagate", damped)
    params = bath.SpectralParams(alpha=0.0, omega_c=0.5, omega_m=3.0, N_b=3)
    cfg = PropagationConfig(t_end=20.0, dt=1e-3, seed=0)
    scan = analysis.bath_damping_scan([0.0, 0.05, 0.1], params, LONGITUDINAL, cfg)
    assert [s.alpha for s in scan] == [0.0, 0.05, 0.1]
    amplitudes = [s.fit.amplitude for s in scan]
    npt.assert_allclose(amplitudes, [0.8, 0.8 / 1.5, 0.4], rtol=1e-5)
    npt.assert_allclose([s.fit.period for s in scan], 3.7, rtol=1e-5)
    trend = analysis.exponential_trend([s.alpha for s in scan], amplitudes)
    assert trend.rate > 0
