"""Signal-to-noise metrics for numerical differentiation of sampled harmonic signals."""

from diffsnr.differentiators import (
    BackwardDifference,
    DifferentiatorKind,
    TrackingFilter,
    make_differentiator,
    run_differentiator,
)
from diffsnr.metrics import (
    MetricReport,
    exact_rmse_harmonic,
    exact_rmse_white,
    noise_derivative_variance,
    rms,
    rmse,
    rmse_ratio_white,
    snr0,
    snr_amp,
    snr_eng,
    snr_harmonic,
    snr_white,
)
from diffsnr.signals import (
    HarmonicNoise,
    HarmonicSpec,
    SampledTrace,
    WhiteGaussianNoise,
    compose_measurement,
    gen_white_noise,
    sample_harmonic,
    true_derivatives,
)
from diffsnr.sweeps import SweepConfig, SweepRow, monte_carlo_rmse, ratio_sweep, run_sweep

__all__ = [
    "BackwardDifference",
    "DifferentiatorKind",
    "HarmonicNoise",
    "HarmonicSpec",
    "MetricReport",
    "SampledTrace",
    "SweepConfig",
    "SweepRow",
    "TrackingFilter",
    "WhiteGaussianNoise",
    "compose_measurement",
    "exact_rmse_harmonic",
    "exact_rmse_white",
    "gen_white_noise",
    "make_differentiator",
    "monte_carlo_rmse",
    "noise_derivative_variance",
    "ratio_sweep",
    "rms",
    "rmse",
    "rmse_ratio_white",
    "run_differentiator",
    "run_sweep",
    "sample_harmonic",
    "snr0",
    "snr_amp",
    "snr_eng",
    "snr_harmonic",
    "snr_white",
    "true_derivatives",
]
