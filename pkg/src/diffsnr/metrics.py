"""RMS/RMSE and the signal-to-noise ratios used to predict differentiation error.

Conventions:

* ``snr_amp`` and ``snr_eng`` are in dB (``20 log10`` of an amplitude ratio).
* ``snr_harmonic``, ``snr_white`` and ``snr0`` are plain ratios.
* Harmonic noise ``A_n sin(w_n t)``: the exact derivative-error RMSE is
  ``A_n w_n / sqrt(2)`` (first) and ``A_n w_n**2 / sqrt(2)`` (second), so
  ``rmse = 1 / (sqrt(2) snr)`` with ``snr = 1 / (A_n w_n**order)``.
* White noise with standard deviation ``sigma`` sampled every ``ts``: the
  backward-differenced noise has variance ``2 sigma**2 / ts**2`` (first) and
  ``6 sigma**2 / ts**4`` (second). With ``snr = ts**order / sigma`` this gives
  ``rmse_sd = sqrt(2) / snr_sd`` and ``rmse_dd = sqrt(6) / snr_dd``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class UndefinedMetricError(ValueError):
    """An SNR or ratio was requested where its denominator is zero."""


def _check_order(order):
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")


def _positive(name, value):
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")


def _non_negative(name, value):
    if not value >= 0:
        raise ValueError(f"{name} must be non-negative, got {value}")


def rms(x) -> float:
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("rms of an empty array is undefined")
    return float(np.sqrt(np.mean(np.square(x))))


def first_valid_index(estimate) -> int:
    """Index of the first finite entry (the end of a differentiator's warm-up)."""
    finite = np.flatnonzero(np.isfinite(np.asarray(estimate, dtype=float)))
    if finite.size == 0:
        raise ValueError("estimate has no valid entries")
    return int(finite[0])


def rmse(estimate, truth, valid_from: int | None = None) -> float:
    """RMS of ``estimate - truth`` over indices ``>= valid_from``.

    With ``valid_from=None`` the warm-up prefix (leading nan) is skipped.
    """
    estimate = np.asarray(estimate, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if estimate.shape != truth.shape:
        raise ValueError(f"length mismatch: estimate {estimate.shape} vs truth {truth.shape}")
    if valid_from is None:
        valid_from = first_valid_index(estimate)
    if not 0 <= valid_from < len(estimate):
        raise ValueError(f"valid_from={valid_from} outside [0, {len(estimate)})")
    return rms(estimate[valid_from:] - truth[valid_from:])


def snr_amp(amplitude: float, noise_amplitude: float) -> float:
    """Amplitude SNR ``20 log10(A / A_n)`` in dB."""
    _positive("amplitude", amplitude)
    _positive("noise amplitude", noise_amplitude)
    return 20.0 * math.log10(amplitude / noise_amplitude)


def snr_eng(y_m, noise) -> float:
    """Conventional SNR ``20 log10(rms(y_m) / rms(noise))`` in dB, from samples."""
    y_m = np.asarray(y_m, dtype=float)
    noise = np.asarray(noise, dtype=float)
    if y_m.shape != noise.shape:
        raise ValueError(f"length mismatch: y_m {y_m.shape} vs noise {noise.shape}")
    noise_rms = rms(noise)
    if noise_rms == 0.0:
        raise UndefinedMetricError("snr_eng is undefined for zero noise")
    return 20.0 * math.log10(rms(y_m) / noise_rms)


def exact_rmse_harmonic(noise_amplitude: float, noise_omega: float, order: int) -> float:
    _check_order(order)
    _non_negative("noise amplitude", noise_amplitude)
    _non_negative("noise omega", noise_omega)
    return noise_amplitude * noise_omega**order / math.sqrt(2.0)


def snr_harmonic(noise_amplitude: float, noise_omega: float, order: int) -> float:
    """``1 / (A_n w_n**order)``; independent of the signal itself."""
    _check_order(order)
    _positive("noise amplitude", noise_amplitude)
    _positive("noise omega", noise_omega)
    return 1.0 / (noise_amplitude * noise_omega**order)


def exact_rmse_white(sigma: float, ts: float, order: int) -> float:
    _check_order(order)
    _non_negative("sigma", sigma)
    _positive("ts", ts)
    return (math.sqrt(2.0) * sigma / ts) if order == 1 else (math.sqrt(6.0) * sigma / ts**2)


def snr_white(sigma: float, ts: float, order: int) -> float:
    _check_order(order)
    _positive("sigma", sigma)
    _positive("ts", ts)
    return ts**order / sigma


def snr0(amplitude: float, sigma: float) -> float:
    _positive("amplitude", amplitude)
    _positive("sigma", sigma)
    return amplitude / sigma


def rmse_ratio_white(ts: float) -> float:
    """Second- to first-derivative white-noise RMSE ratio, ``sqrt(3) / ts``."""
    _positive("ts", ts)
    return math.sqrt(3.0) / ts


def noise_derivative_variance(sigma: float, ts: float, order: int) -> float:
    """Variance of the backward-differenced white noise samples.

    The differences combine independent samples with weights ``(1, -1)`` or
    ``(1, -2, 1)``, so the variance is the sum of squared weights times
    ``sigma**2``, scaled by ``ts**(-2 order)``.
    """
    _check_order(order)
    _non_negative("sigma", sigma)
    _positive("ts", ts)
    weights = 2.0 if order == 1 else 6.0
    return weights * sigma**2 / ts ** (2 * order)


@dataclass(frozen=True)
class MetricReport:
    """All SNR variants and RMSE values for one experiment point.

    Fields that are undefined for the point's noise model (or at zero noise)
    hold ``nan``.
    """

    snr_amp_db: float
    snr_eng_db: float
    snr_sd: float
    snr_dd: float
    snr0: float
    rmse_sd_measured: float
    rmse_dd_measured: float
    rmse_sd_exact: float
    rmse_dd_exact: float


def _or_nan(fn, *args):
    try:
        return fn(*args)
    except ValueError:
        return math.nan


def harmonic_report(amplitude, noise_amplitude, noise_omega, y_m, noise,
                    rmse_sd_measured=math.nan, rmse_dd_measured=math.nan) -> MetricReport:
    return MetricReport(
        snr_amp_db=_or_nan(snr_amp, amplitude, noise_amplitude),
        snr_eng_db=_or_nan(snr_eng, y_m, noise),
        snr_sd=_or_nan(snr_harmonic, noise_amplitude, noise_omega, 1),
        snr_dd=_or_nan(snr_harmonic, noise_amplitude, noise_omega, 2),
        snr0=math.nan,
        rmse_sd_measured=rmse_sd_measured,
        rmse_dd_measured=rmse_dd_measured,
        rmse_sd_exact=exact_rmse_harmonic(noise_amplitude, noise_omega, 1),
        rmse_dd_exact=exact_rmse_harmonic(noise_amplitude, noise_omega, 2),
    )


def white_report(amplitude, sigma, ts, y_m, noise,
                 rmse_sd_measured=math.nan, rmse_dd_measured=math.nan) -> MetricReport:
    return MetricReport(
        snr_amp_db=math.nan,
        snr_eng_db=_or_nan(snr_eng, y_m, noise),
        snr_sd=_or_nan(snr_white, sigma, ts, 1),
        snr_dd=_or_nan(snr_white, sigma, ts, 2),
        snr0=_or_nan(snr0, amplitude, sigma),
        rmse_sd_measured=rmse_sd_measured,
        rmse_dd_measured=rmse_dd_measured,
        rmse_sd_exact=exact_rmse_white(sigma, ts, 1),
        rmse_dd_exact=exact_rmse_white(sigma, ts, 2),
    )
