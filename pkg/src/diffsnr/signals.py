"""Sampled harmonic signals, sensor noise, and analytic derivative truth.

Samples are taken at ``t_k = k * ts`` for ``k = 0, 1, ..., n - 1``. Signal and
harmonic noise both start at phase zero.

White noise is generated with numpy's ``PCG64`` bit generator
(``numpy.random.default_rng(seed)``) and its ziggurat standard-normal
transform, scaled by ``sigma``. Golden outputs are reproducible for a fixed
numpy major version.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class HarmonicSpec:
    """Pure sinusoid ``amplitude * sin(omega * t)``."""

    amplitude: float
    omega: float

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise ValueError(f"amplitude must be non-negative, got {self.amplitude}")
        if not self.omega >= 0:
            raise ValueError(f"omega must be non-negative, got {self.omega}")


@dataclass(frozen=True)
class HarmonicNoise:
    amplitude: float
    omega: float

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise ValueError(f"noise amplitude must be non-negative, got {self.amplitude}")
        if not self.omega >= 0:
            raise ValueError(f"noise omega must be non-negative, got {self.omega}")

    def sample(self, ts: float, n: int) -> np.ndarray:
        return sample_harmonic(HarmonicSpec(self.amplitude, self.omega), ts, n)


@dataclass(frozen=True)
class WhiteGaussianNoise:
    """Zero-mean i.i.d. Gaussian samples; ``sigma`` is the standard deviation."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        _check_seed(self.seed)

    def sample(self, ts: float, n: int) -> np.ndarray:
        _check_geometry(ts, n)
        return gen_white_noise(self.sigma, self.seed, n)


NoiseModel = Union[HarmonicNoise, WhiteGaussianNoise]


@dataclass(frozen=True, eq=False)
class SampledTrace:
    """Measured samples with the aligned analytic truth.

    ``noise`` is kept alongside the measurement so noise-based metrics can be
    computed without regenerating it.
    """

    ts: float
    y_m: np.ndarray
    y: np.ndarray
    ydot: np.ndarray
    yddot: np.ndarray
    noise: np.ndarray

    def __post_init__(self):
        if not self.ts > 0:
            raise ValueError(f"ts must be positive, got {self.ts}")
        n = len(self.y_m)
        if n < 3:
            raise ValueError(f"trace needs at least 3 samples, got {n}")
        for name in ("y", "ydot", "yddot", "noise"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, expected {n}")

    @property
    def n(self) -> int:
        return len(self.y_m)

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n) * self.ts


def _check_geometry(ts, n):
    if not ts > 0:
        raise ValueError(f"ts must be positive, got {ts}")
    if int(n) != n or n < 1:
        raise ValueError(f"sample count must be a positive integer, got {n}")


def _check_seed(seed):
    if int(seed) != seed or not 0 <= seed <= U64_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")


def sample_times(ts: float, n: int) -> np.ndarray:
    _check_geometry(ts, n)
    return np.arange(int(n)) * ts


def sample_harmonic(spec: HarmonicSpec, ts: float, n: int) -> np.ndarray:
    """Return ``A sin(omega k ts)`` for ``k = 0..n-1``."""
    t = sample_times(ts, n)
    return spec.amplitude * np.sin(spec.omega * t)


def true_derivatives(spec: HarmonicSpec, ts: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Analytic first and second derivatives of the sampled sinusoid."""
    t = sample_times(ts, n)
    a, w = spec.amplitude, spec.omega
    ydot = a * w * np.cos(w * t)
    yddot = -a * w**2 * np.sin(w * t)
    return ydot, yddot


def gen_white_noise(sigma: float, seed: int, n: int) -> np.ndarray:
    """Draw ``n`` i.i.d. ``N(0, sigma)`` samples (sigma is a standard deviation).

    The same ``(sigma, seed, n)`` always returns bit-identical samples.
    """
    if not sigma >= 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    _check_seed(seed)
    if int(n) != n or n < 0:
        raise ValueError(f"sample count must be a non-negative integer, got {n}")
    rng = np.random.default_rng(int(seed))
    return sigma * rng.standard_normal(int(n))


def compose_measurement(
    spec: HarmonicSpec, noise_model: NoiseModel, ts: float, n: int
) -> SampledTrace:
    """Sample ``spec``, add noise from ``noise_model`` and attach the truth arrays."""
    y = sample_harmonic(spec, ts, n)
    ydot, yddot = true_derivatives(spec, ts, n)
    noise = noise_model.sample(ts, n)
    return SampledTrace(ts=ts, y_m=y + noise, y=y, ydot=ydot, yddot=yddot, noise=noise)


def measurement_from_arrays(
    y: np.ndarray, ydot: np.ndarray, yddot: np.ndarray, noise: np.ndarray, ts: float
) -> SampledTrace:
    """Build a trace from precomputed arrays, e.g. non-harmonic test signals."""
    y = np.asarray(y, dtype=float)
    noise = np.asarray(noise, dtype=float)
    if y.shape != noise.shape:
        raise ValueError(f"signal length {len(y)} does not match noise length {len(noise)}")
    return SampledTrace(
        ts=ts,
        y_m=y + noise,
        y=y,
        ydot=np.asarray(ydot, dtype=float),
        yddot=np.asarray(yddot, dtype=float),
        noise=noise,
    )
