"""Kernel layer: mirror parameter, damping factor, causal inversion."""

import math

import numpy as np
import pytest

from artifact import (
    CausalityLeakError,
    FirstOrderKernel,
    GridSizeError,
    ParameterError,
    PredictorParams,
    SaturationError,
    alpha,
    anticausal_kernel,
    causal_kernel,
    causality_leak_ratio,
    inverse_grid,
    k_transfer,
    predictor_transfer,
    psi,
    tap_l1_tail,
    v_transfer,
)

PI = math.pi


# ------------------------------------------------------------------- alpha

def test_alpha_hand_values():
    assert abs(alpha(2.0, PI / 2) + 0.5) < 1e-14
    assert abs(alpha(2.0, PI / 3) + 0.8) < 1e-14
    assert abs(alpha(-2.0, PI / 3)) < 1e-15


def test_alpha_root_identity_random():
    rng = np.random.default_rng(123)
    for _ in range(2000):
        a = float(rng.uniform(1.05, 30.0) * rng.choice([-1.0, 1.0]))
        om = float(rng.uniform(0.02, PI - 0.02))
        al = alpha(a, om)
        assert -1.0 < al < 1.0
        assert abs(1.0 + al * a + (a + al) * math.cos(om)) <= 1e-9 * (1.0 + abs(a))


def test_alpha_rejects_bad_domain():
    with pytest.raises(ParameterError):
        alpha(0.5, PI / 3)
    with pytest.raises(ParameterError):
        alpha(2.0, 0.0)
    with pytest.raises(ParameterError):
        alpha(2.0, PI)


# --------------------------------------------------------------------- psi

def test_psi_hand_values():
    al = alpha(2.0, PI / 3)
    assert abs(psi(2.0, al, 0.0) - 15.0) < 1e-12
    assert abs(psi(2.0, al, PI) + 5.0 / 9.0) < 1e-13
    assert abs(psi(2.0, al, PI / 3)) < 1e-13
    al2 = alpha(2.0, PI / 2)
    assert abs(psi(2.0, al2, 0.0) - 6.0) < 1e-12
    assert abs(psi(2.0, al2, PI) + 2.0 / 3.0) < 1e-13
    al3 = alpha(-2.0, PI / 3)
    assert abs(psi(-2.0, al3, 0.0) - 1.0) < 1e-14
    assert abs(psi(-2.0, al3, PI) + 3.0) < 1e-13


def test_psi_sign_structure():
    # positive strictly inside the band, zero at the edge, negative outside
    for a in (1.7, 2.0, -2.0, 5.0, -3.0):
        om_edge = PI / 3
        al = alpha(a, om_edge)
        w = np.linspace(0.0, PI, 4001)
        vals = psi(a, al, w)
        assert np.all(vals[w < om_edge - 1e-6] > 0)
        assert np.all(vals[w > om_edge + 1e-6] < 0)
        assert abs(psi(a, al, om_edge)) < 1e-12


def test_psi_even():
    al = alpha(2.0, PI / 3)
    w = np.linspace(0.0, PI, 100)
    assert np.max(np.abs(psi(2.0, al, w) - psi(2.0, al, -w))) == 0.0


def test_psi_matches_exponent_real_part():
    a = 2.0
    al = alpha(a, PI / 3)
    w = np.linspace(-PI, PI, 257)
    z = np.exp(1j * w)
    s = 1.0 if a + al > 0 else -1.0
    direct = (s * (z + a) / (z + al)).real
    assert np.max(np.abs(psi(a, al, w) - direct)) < 1e-12


# ----------------------------------------------------------------- kernels

def test_anticausal_taps_hand_values():
    k = anticausal_kernel(FirstOrderKernel(2.0), -3)
    assert k.start_index == -3
    assert np.allclose(k.values, [-0.0625, 0.125, -0.25, 0.5], atol=1e-15)


def test_anticausal_matches_transfer_inversion():
    n = 2048
    for a in (1.5, -1.5, 2.0, -2.0, 5.0, -5.0):
        kern = FirstOrderKernel(a)
        closed = anticausal_kernel(kern, -64)
        inverted = inverse_grid(k_transfer(kern, n), -64, 65)
        assert np.max(np.abs(closed.values - inverted.values)) < 1e-12


def test_anticausal_dc_sum():
    for a in (1.5, -1.5, 2.0, -2.0, 5.0, -5.0):
        vals = anticausal_kernel(FirstOrderKernel(a), -200).values
        assert abs(np.sum(vals) - 1.0 / (1.0 + a)) < 1e-12


def test_anticausal_rejects_two_parameter_form():
    with pytest.raises(ParameterError):
        anticausal_kernel(FirstOrderKernel(2.0, 1.0), -4)
    with pytest.raises(ParameterError):
        anticausal_kernel(FirstOrderKernel(2.0), 1)


def test_two_parameter_transfer_factorization():
    n = 64
    kern = FirstOrderKernel(2.0, -0.7)
    from artifact import grid_omegas

    z = np.exp(1j * grid_omegas(n))
    direct = (z + kern.b) / (z + kern.a)
    grid = k_transfer(kern, n).values
    assert np.max(np.abs(direct - grid)) < 1e-12
    assert kern.c == kern.b - kern.a


def test_pole_validation():
    for bad in (1.0, -1.0, 0.3, 0.0):
        with pytest.raises(ParameterError):
            FirstOrderKernel(bad)
    with pytest.raises(ParameterError):
        FirstOrderKernel(2.0).c


# ---------------------------------------------------------- damping factor

def test_v_hand_values():
    # exponent at omega=0 is 15*gamma, at omega=-pi it is -(5/9)*gamma
    n = 64
    al = alpha(2.0, PI / 3)
    v1 = v_transfer(2.0, al, -0.4, n).values
    assert abs(v1[n // 2] - (1.0 - math.exp(-6.0))) < 1e-12
    v2 = v_transfer(2.0, al, -1.2, n).values
    assert abs(v2[0] - (1.0 - math.exp(2.0 / 3.0))) < 1e-12


def test_v_gamma_zero_is_identity_zero():
    al = alpha(2.0, PI / 3)
    v = v_transfer(2.0, al, 0.0, 32).values
    assert np.max(np.abs(v)) == 0.0


def test_v_magnitude_matches_psi():
    n = 512
    a, gamma = 2.0, -7.0
    al = alpha(a, PI / 3)
    v = v_transfer(a, al, gamma, n).values
    om = np.linspace(-PI, PI, n, endpoint=False)
    assert np.max(np.abs(np.abs(v - 1.0) - np.exp(gamma * psi(a, al, om)))) < 1e-12


def test_v_in_band_bound():
    # |V| <= |1| + |V-1| <= 2 on the band for any gamma <= 0
    n = 4096
    om = np.linspace(-PI, PI, n, endpoint=False)
    for a, edge in ((2.0, PI / 3), (-2.0, PI / 3), (1.5, PI / 2)):
        al = alpha(a, edge)
        band = np.abs(om) <= edge
        for gamma in (-0.5, -3.0, -40.0):
            v = v_transfer(a, al, gamma, n).values
            assert np.max(np.abs(v[band])) <= 2.0 + 1e-12


def test_v_saturation_guard():
    al = alpha(2.0, PI / 3)
    with pytest.raises(SaturationError):
        v_transfer(2.0, al, -2000.0, 256)  # out-of-band exponent 2000*(5/9) > 700


def test_v_alpha_domain():
    with pytest.raises(ParameterError):
        v_transfer(2.0, 1.0, -1.0, 32)


# ---------------------------------------------------------- causal kernel

def test_predictor_transfer_is_product():
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-4.0, n=256, m=32, mode="low")
    al = alpha(2.0, PI / 3)
    lhs = predictor_transfer(kern, params).values
    rhs = v_transfer(2.0, al, -4.0, 256).values * k_transfer(kern, 256).values
    assert np.array_equal(lhs, rhs)


def test_causal_kernel_is_real_and_truncated():
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-6.0, n=2048, m=64, mode="low")
    taps = causal_kernel(kern, params)
    assert taps.start_index == 0
    assert len(taps) == 64
    assert np.max(np.abs(taps.values.imag)) == 0.0


def test_causal_kernel_dc_consistency():
    # sum of all causal taps approximates Khat at omega=0
    kern = FirstOrderKernel(2.0)
    n = 4096
    params = PredictorParams(omega=PI / 3, gamma=-10.0, n=n, m=n // 2, mode="low")
    taps = causal_kernel(kern, params)
    dc = predictor_transfer(kern, params).values[n // 2]
    assert abs(np.sum(taps.values) - dc) < 1e-10


def test_causal_kernel_gamma_zero():
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=0.0, n=256, m=16, mode="low")
    assert causality_leak_ratio(kern, params) == 0.0
    assert np.max(np.abs(causal_kernel(kern, params).values)) == 0.0


def test_causal_kernel_leak_small_on_adequate_grid():
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-8.0, n=4096, m=512, mode="low")
    assert causality_leak_ratio(kern, params) < 1e-12


def test_causal_kernel_leak_guard_fires_on_tiny_grid():
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-8.0, n=64, m=16, mode="low")
    with pytest.raises(CausalityLeakError):
        causal_kernel(kern, params)


def test_causal_kernel_m_limit():
    kern = FirstOrderKernel(2.0)
    params = PredictorParams(omega=PI / 3, gamma=-1.0, n=256, m=200, mode="low")
    with pytest.raises(GridSizeError):
        causal_kernel(kern, params)


def test_tap_l1_tail_shrinks_with_m():
    kern = FirstOrderKernel(2.0)
    tails = [
        tap_l1_tail(kern, PredictorParams(omega=PI / 3, gamma=-6.0, n=2048, m=m, mode="low"))
        for m in (16, 64, 256)
    ]
    assert tails[0] > tails[1] > tails[2] >= 0.0


def test_mode_gamma_sign_contract():
    with pytest.raises(ParameterError):
        PredictorParams(omega=PI / 3, gamma=1.0, n=64, m=8, mode="low")
    with pytest.raises(ParameterError):
        PredictorParams(omega=PI / 3, gamma=-1.0, n=64, m=8, mode="high")
    with pytest.raises(ParameterError):
        PredictorParams(omega=PI / 3, gamma=-1.0, n=64, m=0, mode="low")
    with pytest.raises(GridSizeError):
        PredictorParams(omega=PI / 3, gamma=-1.0, n=60, m=8, mode="low")
    with pytest.raises(ParameterError):
        PredictorParams(omega=PI / 3, gamma=-1.0, n=64, m=8, mode="mid")
