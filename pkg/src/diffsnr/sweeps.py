"""Deterministic parameter sweeps over noise frequency or noise level.

Harmonic-noise sweeps are deterministic; each grid point is one run. White-noise
sweeps run ``trials`` independent noise realizations per grid point. The seed of
trial ``j`` at grid index ``i`` is::

    SeedSequence(base_seed, spawn_key=(i, j)).generate_state(1, uint64)[0]

so results do not depend on the order in which points or trials are evaluated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from diffsnr import metrics
from diffsnr.differentiators import DifferentiatorKind, differentiate
from diffsnr.signals import (
    HarmonicNoise,
    HarmonicSpec,
    NoiseModel,
    WhiteGaussianNoise,
    compose_measurement,
    _check_seed,
)

ALL_KINDS = tuple(DifferentiatorKind)
EXPERIMENTS = ("example1", "example2", "example3", "custom")
RECOMMENDED_PERIODS = 10


class SweepError(RuntimeError):
    """A grid point failed; the message names the point."""


@dataclass(frozen=True)
class SweepConfig:
    signal: HarmonicSpec
    noise_grid: tuple[NoiseModel, ...]
    ts: float
    duration: float
    trials: int = 10
    base_seed: int = 0
    differentiators: tuple[DifferentiatorKind, ...] = ALL_KINDS
    experiment: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "noise_grid", tuple(self.noise_grid))
        object.__setattr__(self, "differentiators", tuple(self.differentiators))
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not self.ts > 0:
            raise ValueError(f"ts must be positive, got {self.ts}")
        if not self.duration > 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.n < 3:
            raise ValueError(f"duration {self.duration} s at ts {self.ts} s gives only {self.n} samples")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials}")
        _check_seed(self.base_seed)
        if not self.noise_grid:
            raise ValueError("noise grid is empty")
        kinds = {type(p) for p in self.noise_grid}
        if len(kinds) != 1:
            raise ValueError("noise grid mixes harmonic and white noise points")
        if not self.differentiators:
            raise ValueError("no differentiators selected")
        if len(set(self.differentiators)) != len(self.differentiators):
            raise ValueError("duplicate differentiators")

    @property
    def n(self) -> int:
        return int(round(self.duration / self.ts))

    @property
    def noise_kind(self) -> str:
        return "white" if isinstance(self.noise_grid[0], WhiteGaussianNoise) else "harmonic"

    @property
    def parameter(self) -> str:
        return "sigma" if self.noise_kind == "white" else "omega_n"

    def grid_values(self) -> list[float]:
        if self.noise_kind == "white":
            return [p.sigma for p in self.noise_grid]
        return [p.omega for p in self.noise_grid]

    def warn_if_short(self):
        if self.signal.omega > 0:
            periods = self.n * self.ts * self.signal.omega / (2 * math.pi)
            if periods < RECOMMENDED_PERIODS:
                warnings.warn(
                    f"sweep covers {periods:.3g} signal periods; at least {RECOMMENDED_PERIODS} are recommended",
                    stacklevel=3,
                )


def example1(**overrides) -> SweepConfig:
    """50 sin(t) with unit-amplitude harmonic noise, omega_n = 0..10 rad/s."""
    cfg = SweepConfig(
        experiment="example1",
        signal=HarmonicSpec(50.0, 1.0),
        noise_grid=tuple(HarmonicNoise(1.0, float(w)) for w in range(11)),
        ts=0.01,
        duration=100 * 2 * math.pi,
        trials=1,
    )
    return replace(cfg, **overrides)


def example2(**overrides) -> SweepConfig:
    """sin(2 pi t) with harmonic noise of amplitude 0.2, omega_n = 0..10 rad/s."""
    cfg = SweepConfig(
        experiment="example2",
        signal=HarmonicSpec(1.0, 2 * math.pi),
        noise_grid=tuple(HarmonicNoise(0.2, float(w)) for w in range(11)),
        ts=0.01,
        duration=100.0,
        trials=1,
    )
    return replace(cfg, **overrides)


EXAMPLE3_SIGMAS = (0.25, 0.5, 1.0, 1.5, 2.0)
RATIO_SIGMAS = (0.25, 0.5, 1.0, 2.0)


def example3(sigmas=EXAMPLE3_SIGMAS, **overrides) -> SweepConfig:
    """sin(2 pi t) with white noise; the grid contains sigma = 1."""
    cfg = SweepConfig(
        experiment="example3",
        signal=HarmonicSpec(1.0, 2 * math.pi),
        noise_grid=tuple(WhiteGaussianNoise(float(s)) for s in sigmas),
        ts=0.01,
        duration=100.0,
        trials=10,
    )
    return replace(cfg, **overrides)


PRESETS = {"example1": example1, "example2": example2, "example3": example3}


def preset(name: str, **overrides) -> SweepConfig:
    try:
        return PRESETS[name](**overrides)
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}") from None


def trial_seed(base_seed: int, grid_index: int, trial: int) -> int:
    ss = np.random.SeedSequence(int(base_seed), spawn_key=(int(grid_index), int(trial)))
    return int(ss.generate_state(1, np.uint64)[0])


def _truth(trace, kind):
    return trace.ydot if kind.order == 1 else trace.yddot


def truncation_rmse(signal: HarmonicSpec, ts: float, n: int, kind: DifferentiatorKind) -> float:
    """RMSE of ``kind`` on the noise-free signal: the operator's own bias."""
    clean = compose_measurement(signal, HarmonicNoise(0.0, 0.0), ts, n)
    return metrics.rmse(differentiate(kind, clean.y_m, ts), _truth(clean, kind))


def _aggregate(per_trial):
    per_trial = np.asarray(per_trial, dtype=float)
    mean = float(np.sqrt(np.mean(per_trial**2)))
    if per_trial.size < 2:
        return mean, 0.0
    return mean, float(np.std(per_trial, ddof=1) / np.sqrt(per_trial.size))


def monte_carlo_rmse(signal: HarmonicSpec, sigma: float, ts: float, n: int, trials: int,
                     base_seed: int, kind: DifferentiatorKind, grid_index: int = 0) -> tuple[float, float]:
    """RMS over trials of the per-trial RMSE, and its standard error across trials."""
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials}")
    per_trial = []
    for j in range(trials):
        noise = WhiteGaussianNoise(sigma, trial_seed(base_seed, grid_index, j))
        trace = compose_measurement(signal, noise, ts, n)
        per_trial.append(metrics.rmse(differentiate(kind, trace.y_m, ts), _truth(trace, kind)))
    return _aggregate(per_trial)


@dataclass
class SweepRow:
    """One grid point: measured, truncation and exact RMSE plus every SNR."""

    parameter: str
    value: float
    report: metrics.MetricReport
    measured: dict[DifferentiatorKind, float] = field(default_factory=dict)
    stderr: dict[DifferentiatorKind, float] = field(default_factory=dict)
    truncation: dict[DifferentiatorKind, float] = field(default_factory=dict)
    trials: int = 1

    def columns(self) -> list[tuple[str, float]]:
        """Ordered ``(header, value)`` pairs; headers carry units where they have any."""
        if self.parameter == "omega_n":
            cols = [("omega_n_rad_s", self.value)]
        else:
            cols = [("sigma", self.value), ("sigma_sq", self.value**2)]
        for kind, rmse in self.measured.items():
            tag = f"{'sd' if kind.order == 1 else 'dd'}_{kind.family}"
            cols += [
                (f"rmse_{tag}", rmse),
                (f"stderr_{tag}", self.stderr[kind]),
                (f"trunc_{tag}", self.truncation[kind]),
            ]
        r = self.report
        cols += [
            ("rmse_sd_exact", r.rmse_sd_exact),
            ("rmse_dd_exact", r.rmse_dd_exact),
            ("snr_amp_db", r.snr_amp_db),
            ("snr_eng_db", r.snr_eng_db),
            ("snr_sd", r.snr_sd),
            ("snr_dd", r.snr_dd),
            ("snr0", r.snr0),
            ("trials", self.trials),
        ]
        return cols


def _bd_measured(measured, order):
    kind = DifferentiatorKind.BD_FIRST if order == 1 else DifferentiatorKind.BD_SECOND
    return measured.get(kind, math.nan)


def _harmonic_point(config, noise, truncation):
    trace = compose_measurement(config.signal, noise, config.ts, config.n)
    measured = {
        kind: metrics.rmse(differentiate(kind, trace.y_m, config.ts), _truth(trace, kind))
        for kind in config.differentiators
    }
    report = metrics.harmonic_report(
        config.signal.amplitude, noise.amplitude, noise.omega, trace.y_m, trace.noise,
        _bd_measured(measured, 1), _bd_measured(measured, 2),
    )
    return SweepRow(
        parameter="omega_n",
        value=noise.omega,
        report=report,
        measured=measured,
        stderr={k: 0.0 for k in measured},
        truncation=dict(truncation),
        trials=1,
    )


def _white_point(config, index, noise, truncation):
    per_trial = {kind: [] for kind in config.differentiators}
    first = None
    for j in range(config.trials):
        model = WhiteGaussianNoise(noise.sigma, trial_seed(config.base_seed, index, j))
        trace = compose_measurement(config.signal, model, config.ts, config.n)
        if first is None:
            first = trace
        for kind in config.differentiators:
            per_trial[kind].append(metrics.rmse(differentiate(kind, trace.y_m, config.ts), _truth(trace, kind)))
    agg = {kind: _aggregate(v) for kind, v in per_trial.items()}
    measured = {k: a[0] for k, a in agg.items()}
    # snr_eng uses the first trial's samples
    report = metrics.white_report(
        config.signal.amplitude, noise.sigma, config.ts, first.y_m, first.noise,
        _bd_measured(measured, 1), _bd_measured(measured, 2),
    )
    return SweepRow(
        parameter="sigma",
        value=noise.sigma,
        report=report,
        measured=measured,
        stderr={k: a[1] for k, a in agg.items()},
        truncation=dict(truncation),
        trials=config.trials,
    )


def _truncations(config):
    return {k: truncation_rmse(config.signal, config.ts, config.n, k) for k in config.differentiators}


def run_point(config: SweepConfig, index: int, truncation=None) -> SweepRow:
    """Evaluate grid point ``index`` alone; identical to its row in ``run_sweep``."""
    if truncation is None:
        truncation = _truncations(config)
    noise = config.noise_grid[index]
    try:
        if config.noise_kind == "white":
            return _white_point(config, index, noise, truncation)
        return _harmonic_point(config, noise, truncation)
    except Exception as exc:
        raise SweepError(f"grid point {index} ({config.parameter}={config.grid_values()[index]}): {exc}") from exc


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per grid point, in grid order."""
    config.warn_if_short()
    truncation = _truncations(config)
    return [run_point(config, i, truncation) for i in range(len(config.noise_grid))]


@dataclass
class RatioRow:
    sigma: float
    measured: dict[str, float]
    exact: float

    def columns(self) -> list[tuple[str, float]]:
        cols = [("sigma", self.sigma)]
        cols += [(f"ratio_{family}", v) for family, v in self.measured.items()]
        cols.append(("ratio_exact_per_s", self.exact))
        return cols


def ratio_sweep(config: SweepConfig) -> list[RatioRow]:
    """Measured second- to first-derivative RMSE ratio per sigma, next to ``sqrt(3)/ts``."""
    if config.noise_kind != "white":
        raise ValueError("ratio sweep needs a white-noise grid")
    families = [
        fam for fam in ("bd", "tf")
        if sum(k.family == fam for k in config.differentiators) == 2
    ]
    if not families:
        raise ValueError("ratio sweep needs first and second order of at least one differentiator family")
    exact = metrics.rmse_ratio_white(config.ts)
    out = []
    for row in run_sweep(config):
        ratios = {}
        for fam in families:
            sd, dd = _family_pair(row.measured, fam)
            if sd == 0.0:
                raise metrics.UndefinedMetricError(
                    f"rmse ratio undefined at sigma={row.value}: first-derivative RMSE is zero"
                )
            ratios[fam] = dd / sd
        out.append(RatioRow(sigma=row.value, measured=ratios, exact=exact))
    return out


def _family_pair(measured, family):
    sd = next(v for k, v in measured.items() if k.family == family and k.order == 1)
    dd = next(v for k, v in measured.items() if k.family == family and k.order == 2)
    return sd, dd
