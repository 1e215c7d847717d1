import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffsnr.signals import (
    HarmonicNoise,
    HarmonicSpec,
    SampledTrace,
    WhiteGaussianNoise,
    compose_measurement,
    gen_white_noise,
    measurement_from_arrays,
    sample_harmonic,
    true_derivatives,
)

amplitudes = st.floats(0, 100, allow_nan=False)
omegas = st.floats(0, 50, allow_nan=False)
sample_times = st.floats(1e-4, 1.0)


def test_sample_harmonic_zero_frequency():
    assert sample_harmonic(HarmonicSpec(1, 0), 0.01, 5).tolist() == [0, 0, 0, 0, 0]


def test_sample_harmonic_quarter_period():
    y = sample_harmonic(HarmonicSpec(1, 2 * math.pi), 0.25, 5)
    np.testing.assert_allclose(y, [0, 1, 0, -1, 0], atol=1e-15)


def test_sample_harmonic_example1_signal():
    y = sample_harmonic(HarmonicSpec(50, 1), 0.01, 1000)
    k = np.arange(1000)
    assert np.array_equal(y, 50 * np.sin(k * 0.01))


@given(amplitudes, omegas, sample_times, st.integers(1, 200))
def test_sample_harmonic_pointwise(a, w, ts, n):
    y = sample_harmonic(HarmonicSpec(a, w), ts, n)
    assert len(y) == n
    for k in (0, n // 2, n - 1):
        assert y[k] == pytest.approx(a * math.sin(w * k * ts), abs=1e-12 * max(1, a))


@pytest.mark.parametrize("ts, n", [(0, 5), (-0.01, 5), (0.01, 0)])
def test_sample_harmonic_rejects_bad_geometry(ts, n):
    with pytest.raises(ValueError):
        sample_harmonic(HarmonicSpec(1, 1), ts, n)


@pytest.mark.parametrize("a, w", [(-1, 1), (1, -1), (math.nan, 1)])
def test_harmonic_spec_invariants(a, w):
    with pytest.raises(ValueError):
        HarmonicSpec(a, w)


def test_true_derivatives_at_origin():
    ydot, yddot = true_derivatives(HarmonicSpec(1, 2 * math.pi), 0.01, 3)
    assert ydot[0] == 2 * math.pi
    assert yddot[0] == 0


def test_true_derivatives_example1_amplitudes():
    # omega = 1 so both derivative amplitudes equal A = 50
    ydot, yddot = true_derivatives(HarmonicSpec(50, 1), 0.01, int(2 * math.pi / 0.01) + 1)
    assert np.max(np.abs(ydot)) == pytest.approx(50, rel=1e-4)
    assert np.max(np.abs(yddot)) == pytest.approx(50, rel=1e-4)


@given(omegas)
def test_true_derivatives_zero_amplitude(w):
    ydot, yddot = true_derivatives(HarmonicSpec(0, w), 0.01, 20)
    assert not ydot.any() and not yddot.any()


def test_truth_consistent_with_central_difference():
    a, w, ts = 1.0, 2 * math.pi, 1e-3
    n = 2001
    y = sample_harmonic(HarmonicSpec(a, w), ts, n)
    ydot, _ = true_derivatives(HarmonicSpec(a, w), ts, n)
    central = (y[2:] - y[:-2]) / (2 * ts)
    bound = a * w**3 * ts**2 / 6
    assert np.max(np.abs(ydot[1:-1] - central)) <= bound + 1e-9


def test_white_noise_zero_sigma():
    assert gen_white_noise(0.0, 123, 4).tolist() == [0, 0, 0, 0]


def test_white_noise_rejects_negative_sigma():
    with pytest.raises(ValueError):
        gen_white_noise(-1.0, 0, 4)
    with pytest.raises(ValueError):
        WhiteGaussianNoise(-0.1)


@pytest.mark.parametrize("seed", [-1, 2**64, 1.5])
def test_white_noise_rejects_bad_seed(seed):
    with pytest.raises(ValueError):
        gen_white_noise(1.0, seed, 4)


def test_white_noise_is_bit_reproducible():
    a = gen_white_noise(0.7, 2**64 - 1, 1000)
    b = gen_white_noise(0.7, 2**64 - 1, 1000)
    assert a.tobytes() == b.tobytes()
    assert a.tobytes() != gen_white_noise(0.7, 2**64 - 2, 1000).tobytes()


def test_white_noise_std_and_whiteness():
    n = 10**6
    x = gen_white_noise(1.0, 20240101, n)
    assert abs(np.std(x) - 1.0) < 0.005
    lag1 = np.dot(x[1:] - x.mean(), x[:-1] - x.mean()) / np.sum((x - x.mean()) ** 2)
    assert abs(lag1) < 0.005


@pytest.mark.parametrize("seed", [0, 1, 42, 2**63 + 5])
@pytest.mark.parametrize("sigma", [0.1, 1.0, 3.0])
def test_white_noise_sample_moments(seed, sigma):
    n = 10**5
    x = gen_white_noise(sigma, seed, n)
    assert abs(x.mean()) <= 5 * sigma / math.sqrt(n)
    assert abs(x.std() - sigma) / sigma <= 5 / math.sqrt(2 * n)


def test_compose_zero_amplitude_harmonic_noise():
    spec = HarmonicSpec(1, 2 * math.pi)
    trace = compose_measurement(spec, HarmonicNoise(0.0, 7.0), 0.01, 100)
    assert np.array_equal(trace.y_m, trace.y)


def test_compose_zero_frequency_harmonic_noise():
    trace = compose_measurement(HarmonicSpec(50, 1), HarmonicNoise(1.0, 0.0), 0.01, 100)
    assert np.array_equal(trace.y_m, trace.y)


def test_compose_example1_measurement():
    ts, n = 0.01, 500
    t = np.arange(n) * ts
    for wn in range(11):
        trace = compose_measurement(HarmonicSpec(50, 1), HarmonicNoise(1, wn), ts, n)
        np.testing.assert_allclose(trace.y_m, 50 * np.sin(t) + np.sin(wn * t), rtol=0, atol=1e-12)


def test_compose_example3_measurement():
    ts, n = 0.01, 10_000
    trace = compose_measurement(HarmonicSpec(1, 2 * math.pi), WhiteGaussianNoise(1.0, seed=9), ts, n)
    np.testing.assert_array_equal(trace.noise, gen_white_noise(1.0, 9, n))
    np.testing.assert_array_equal(trace.y_m, trace.y + trace.noise)
    assert trace.n == n and trace.t[-1] == pytest.approx((n - 1) * ts)


def test_compose_is_deterministic():
    spec, noise = HarmonicSpec(2, 3), WhiteGaussianNoise(0.5, seed=77)
    a = compose_measurement(spec, noise, 0.01, 1000)
    b = compose_measurement(spec, noise, 0.01, 1000)
    for name in ("y_m", "y", "ydot", "yddot", "noise"):
        assert getattr(a, name).tobytes() == getattr(b, name).tobytes()


def test_trace_invariants():
    z = np.zeros(5)
    with pytest.raises(ValueError):
        SampledTrace(ts=0.01, y_m=z[:2], y=z[:2], ydot=z[:2], yddot=z[:2], noise=z[:2])
    with pytest.raises(ValueError):
        SampledTrace(ts=0.0, y_m=z, y=z, ydot=z, yddot=z, noise=z)
    with pytest.raises(ValueError):
        SampledTrace(ts=0.01, y_m=z, y=z, ydot=z[:4], yddot=z, noise=z)


def test_measurement_from_arrays_length_mismatch():
    with pytest.raises(ValueError):
        measurement_from_arrays(np.zeros(5), np.zeros(5), np.zeros(5), np.zeros(4), 0.1)


@settings(max_examples=30)
@given(st.integers(0, 2**64 - 1), st.floats(0, 10), st.integers(0, 50))
def test_white_noise_determinism_property(seed, sigma, n):
    assert gen_white_noise(sigma, seed, n).tobytes() == gen_white_noise(sigma, seed, n).tobytes()
