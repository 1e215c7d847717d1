"""Line-oriented ``key = value`` sweep configuration files.

Example::

    # sin(2 pi t) with white noise
    signal.amplitude = 1
    signal.omega = 2*pi
    noise.kind = white
    noise.grid = 0.25, 0.5, 1, 2
    ts = 0.01
    duration = 100
    trials = 10
    seed = 7
    differentiators = bd1, bd2

Numbers may be written as ``<x>*pi`` or ``pi``. ``noise.amplitude`` is required
for harmonic noise and rejected for white noise.
"""

from __future__ import annotations

import math

from diffsnr.differentiators import DifferentiatorKind
from diffsnr.signals import HarmonicNoise, HarmonicSpec, WhiteGaussianNoise
from diffsnr.sweeps import ALL_KINDS, SweepConfig

REQUIRED = ("signal.amplitude", "signal.omega", "noise.kind", "noise.grid", "ts", "duration")
OPTIONAL = ("noise.amplitude", "trials", "seed", "differentiators")
KNOWN = REQUIRED + OPTIONAL


class ConfigError(ValueError):
    pass


def _number(key, text):
    s = text.strip().lower().replace(" ", "")
    scale = 1.0
    if s == "pi":
        return math.pi
    if s.endswith("*pi"):
        s, scale = s[:-3], math.pi
    try:
        value = float(s) * scale
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not a number") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: {text!r} is not finite")
    return value


def _integer(key, text):
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not an integer") from None


def read_pairs(text: str) -> dict[str, str]:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        pairs[key] = value
    return pairs


def parse_config(text: str) -> SweepConfig:
    """Parse and validate a custom sweep configuration."""
    pairs = read_pairs(text)
    missing = [k for k in REQUIRED if k not in pairs]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    amplitude = _number("signal.amplitude", pairs["signal.amplitude"])
    omega = _number("signal.omega", pairs["signal.omega"])
    ts = _number("ts", pairs["ts"])
    duration = _number("duration", pairs["duration"])
    if amplitude < 0:
        raise ConfigError("signal.amplitude must be non-negative")
    if omega < 0:
        raise ConfigError("signal.omega must be non-negative")
    if ts <= 0:
        raise ConfigError("ts must be positive")
    if duration <= 0:
        raise ConfigError("duration must be positive")

    grid = [_number("noise.grid", v) for v in pairs["noise.grid"].split(",")]
    if any(v < 0 for v in grid):
        raise ConfigError("noise.grid values must be non-negative")

    kind = pairs["noise.kind"].strip().lower()
    if kind == "harmonic":
        if "noise.amplitude" not in pairs:
            raise ConfigError("noise.amplitude is required for harmonic noise")
        noise_amp = _number("noise.amplitude", pairs["noise.amplitude"])
        if noise_amp < 0:
            raise ConfigError("noise.amplitude must be non-negative")
        noise_grid = tuple(HarmonicNoise(noise_amp, w) for w in grid)
    elif kind == "white":
        if "noise.amplitude" in pairs:
            raise ConfigError("noise.amplitude does not apply to white noise; use noise.grid for sigma")
        noise_grid = tuple(WhiteGaussianNoise(s) for s in grid)
    else:
        raise ConfigError(f"noise.kind must be 'harmonic' or 'white', got {pairs['noise.kind']!r}")

    trials = _integer("trials", pairs["trials"]) if "trials" in pairs else (10 if kind == "white" else 1)
    if trials < 1:
        raise ConfigError("trials must be at least 1")
    seed = _integer("seed", pairs["seed"]) if "seed" in pairs else 0
    if not 0 <= seed < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer")

    if "differentiators" in pairs:
        try:
            kinds = tuple(DifferentiatorKind.parse(v) for v in pairs["differentiators"].split(","))
        except ValueError as exc:
            raise ConfigError(f"differentiators: {exc}") from None
    else:
        kinds = ALL_KINDS

    try:
        return SweepConfig(
            experiment="custom",
            signal=HarmonicSpec(amplitude, omega),
            noise_grid=noise_grid,
            ts=ts,
            duration=duration,
            trials=trials,
            base_seed=seed,
            differentiators=kinds,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
