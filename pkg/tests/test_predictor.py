"""Prediction runs: window bookkeeping, oracles, causality, engines."""

import math

import numpy as np
import pytest

from artifact import (
    BandSignalSpec,
    ErrorReport,
    FirstOrderKernel,
    InsufficientDataError,
    ParameterError,
    PredictionRun,
    PredictorParams,
    Signal,
    WindowMismatchError,
    anticausal_kernel,
    anticausal_tail_len,
    causal_kernel,
    dtft_on_grid,
    error_report,
    forecast,
    gen_band_signal,
    lq_grid_norm,
    target,
)
from artifact import _slowconv
from artifact._engine import windowed_dot

PI = math.pi


def _std_run(x, a=2.0, gamma=-6.0, n=1024, m=128, omega=PI / 3, mode="low", b=None):
    kern = FirstOrderKernel(a, b)
    params = PredictorParams(omega=omega, gamma=gamma, n=n, m=m, mode=mode)
    t_a = x.start_index + m
    t_b = x.end_index - anticausal_tail_len(kern.a)
    return PredictionRun(x, kern, params, t_a, t_b)


def test_tail_len_formula():
    # |a| = 2, tol 1e-12: tail of sum_{u>T} 2^{-u-1} below 1e-12 needs T = 40
    assert anticausal_tail_len(2.0) == 40
    assert anticausal_tail_len(-2.0) == 40
    assert anticausal_tail_len(5.0) < 40
    assert anticausal_tail_len(1.5) > 40
    with pytest.raises(ParameterError):
        anticausal_tail_len(0.9)
    with pytest.raises(ParameterError):
        anticausal_tail_len(2.0, tail_tol=0.0)


def test_target_impulse_hand_values():
    # impulse at t=5: y(t) = k(t-5), so y(5)=1/2, y(4)=-1/4, y(6)=0
    vals = np.zeros(64)
    vals[5] = 1.0
    x = Signal(0, vals)
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-1.0, n=128, m=2, mode="low")
    run = PredictionRun(x, kern, params, 2, 20)
    y = target(run)
    assert abs(y.values[5 - 2] - 0.5) < 1e-15
    assert abs(y.values[4 - 2] + 0.25) < 1e-15
    assert abs(y.values[6 - 2]) < 1e-15
    assert abs(y.values[3 - 2] - 0.125) < 1e-15


def test_target_two_parameter_impulse():
    # K = 1 + c/(z+a): y(t) = x(t) + c*k(t-5)
    vals = np.zeros(64)
    vals[5] = 1.0
    x = Signal(0, vals)
    kern = FirstOrderKernel(2.0, -1.0)  # c = -3
    params = PredictorParams(omega=PI / 3, gamma=-1.0, n=128, m=2, mode="low")
    run = PredictionRun(x, kern, params, 2, 20)
    y = target(run)
    assert abs(y.values[5 - 2] - (1.0 - 3.0 * 0.5)) < 1e-15
    assert abs(y.values[4 - 2] - (-3.0 * -0.25)) < 1e-15


def test_target_b_equal_a_is_identity():
    rng = np.random.default_rng(7)
    x = Signal(0, rng.standard_normal(128))
    run = _std_run(x, a=2.0, b=2.0, n=256, m=16)
    y = target(run)
    xwin = x.values[run.eval_start : run.eval_stop + 1]
    assert np.max(np.abs(y.values - xwin)) == 0.0


def test_target_naive_double_loop_oracle():
    rng = np.random.default_rng(17)
    x = Signal(-10, rng.standard_normal(160) + 1j * rng.standard_normal(160))
    run = _std_run(x, a=-2.0, n=512, m=32)
    y = target(run)
    k = anticausal_kernel(FirstOrderKernel(-2.0), -run.tail_len)
    for t in (run.eval_start, run.eval_start + 7, run.eval_stop):
        acc = 0.0 + 0.0j
        for u in range(run.tail_len + 1):
            acc += k.values[run.tail_len - u] * x.values[t + u - x.start_index]
        assert abs(y.values[t - run.eval_start] - acc) < 1e-12


def test_forecast_naive_double_loop_oracle():
    rng = np.random.default_rng(19)
    x = Signal(0, rng.standard_normal(300))
    run = _std_run(x, n=1024, m=64)
    yhat = forecast(run)
    taps = causal_kernel(run.kernel, run.params).values
    for t in (run.eval_start, run.eval_start + 11, run.eval_stop):
        acc = 0.0 + 0.0j
        for u in range(64):
            acc += taps[u] * x.values[t - u]
        assert abs(yhat.values[t - run.eval_start] - acc) < 1e-12


def test_forecast_reads_only_past():
    rng = np.random.default_rng(23)
    x = Signal(0, rng.standard_normal(400))
    run = _std_run(x, n=1024, m=64)
    ref = forecast(run)
    probe = run.eval_start + 100
    mutated = x.values.copy()
    mutated[probe + 1 :] += rng.standard_normal(len(mutated) - probe - 1)
    run2 = PredictionRun(Signal(0, mutated), run.kernel, run.params, run.eval_start, probe)
    again = forecast(run2)
    assert np.array_equal(again.values, ref.values[: probe - run.eval_start + 1])


def test_prediction_error_shrinks_with_damping():
    x = gen_band_signal(BandSignalSpec(omega=PI / 3, mode="low", length=1024, seed=3), 2048)
    errs = []
    for gamma in (-1.0, -8.0):
        run = _std_run(x, gamma=gamma, n=2048, m=256)
        rep = error_report(target(run), forecast(run),
                           lq_grid_norm(dtft_on_grid(x, 2048), 2.0))
        errs.append(rep.rel_l2_vs_l2x)
    assert errs[1] < errs[0] < 1.0


def test_gamma_zero_forecast_is_zero():
    rng = np.random.default_rng(29)
    x = Signal(0, rng.standard_normal(200))
    run = _std_run(x, gamma=0.0, n=512, m=32)
    assert np.max(np.abs(forecast(run).values)) == 0.0


def test_relative_errors_scale_invariant():
    x = gen_band_signal(BandSignalSpec(omega=PI / 3, mode="low", length=512, seed=31), 1024)
    reps = []
    for scale in (1.0, 137.0):
        xs = Signal(0, scale * x.values)
        run = _std_run(xs, n=1024, m=128)
        reps.append(error_report(target(run), forecast(run),
                                 lq_grid_norm(dtft_on_grid(xs, 1024), 2.0)))
    assert abs(reps[0].rel_l2_vs_l2x - reps[1].rel_l2_vs_l2x) < 1e-12
    assert abs(reps[0].rel_linf_vs_l2x - reps[1].rel_linf_vs_l2x) < 1e-12


def test_window_validation():
    rng = np.random.default_rng(37)
    x = Signal(0, rng.standard_normal(100))
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-1.0, n=256, m=32, mode="low")
    with pytest.raises(InsufficientDataError):
        PredictionRun(x, kern, params, 10, 50)  # only 10 history samples, m=32
    with pytest.raises(InsufficientDataError):
        PredictionRun(x, kern, params, 32, 99)  # no future left for the tail
    with pytest.raises(ParameterError):
        PredictionRun(x, kern, params, 50, 40)  # empty window


def test_error_report_window_mismatch():
    y = Signal(0, np.ones(4))
    with pytest.raises(WindowMismatchError):
        error_report(y, Signal(1, np.ones(4)), 1.0)
    with pytest.raises(WindowMismatchError):
        error_report(y, Signal(0, np.ones(5)), 1.0)
    with pytest.raises(ParameterError):
        error_report(y, Signal(0, np.ones(4)), 0.0)
    rep = error_report(y, Signal(0, np.zeros(4)), 2.0, x_lq=4.0)
    assert isinstance(rep, ErrorReport)
    assert rep.abs_l2 == 2.0 and rep.rel_l2_vs_l2x == 1.0 and rep.rel_l2_vs_lqx == 0.5


def test_engine_wrapper_validates_bounds():
    taps = np.ones(4, dtype=complex)
    x = np.ones(10, dtype=complex)
    with pytest.raises(ParameterError):
        windowed_dot(taps, x, 2, 5, +1)  # reads x[-1]
    with pytest.raises(ParameterError):
        windowed_dot(taps, x, 5, 3, -1)  # reads x[10]
    with pytest.raises(ParameterError):
        windowed_dot(taps, x, 3, 2, 0)
    with pytest.raises(ParameterError):
        windowed_dot(taps, x, 3, 0, 1)
    with pytest.raises(ParameterError):
        windowed_dot(np.ones(0, dtype=complex), x, 3, 2, 1)


def test_engines_agree():
    try:
        from artifact import _fastconv
    except ImportError:
        pytest.skip("compiled engine not built")
    rng = np.random.default_rng(41)
    taps = rng.standard_normal(33) + 1j * rng.standard_normal(33)
    x = rng.standard_normal(200) + 1j * rng.standard_normal(200)
    for start, count, stride in ((40, 100, 1), (10, 120, -1), (32, 1, 1)):
        fast = _fastconv.windowed_dot(taps, x, start, count, stride)
        slow = _slowconv.windowed_dot(taps, x, start, count, stride)
        assert np.max(np.abs(fast - slow)) < 1e-12 * max(1.0, np.max(np.abs(slow)))


def test_slow_engine_matches_definition():
    taps = np.array([2.0, 3.0], dtype=complex)
    x = np.arange(10, dtype=complex)
    out = _slowconv.windowed_dot(taps, x, 4, 3, +1)
    # out[i] = 2*x[4+i] + 3*x[3+i]
    assert np.array_equal(out, np.array([2 * 4 + 3 * 3, 2 * 5 + 3 * 4, 2 * 6 + 3 * 5],
                                        dtype=complex))
    out2 = _slowconv.windowed_dot(taps, x, 4, 2, -1)
    # out[i] = 2*x[4+i] + 3*x[5+i]
    assert np.array_equal(out2, np.array([2 * 4 + 3 * 5, 2 * 5 + 3 * 6], dtype=complex))
