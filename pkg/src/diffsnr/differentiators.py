"""Causal streaming derivative estimators for uniformly sampled data.

Every estimator consumes one sample per ``step`` call and returns the current
derivative estimate, or ``nan`` while it still lacks history. Batch helpers
return arrays with the same ``nan`` warm-up prefix; downstream RMSE code skips
it rather than treating it as zero.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from diffsnr.signals import SampledTrace


class DifferentiatorKind(enum.Enum):
    BD_FIRST = "bd1"
    BD_SECOND = "bd2"
    TRACKING_FIRST = "tf1"
    TRACKING_SECOND = "tf2"

    @property
    def order(self) -> int:
        return 1 if self in (DifferentiatorKind.BD_FIRST, DifferentiatorKind.TRACKING_FIRST) else 2

    @property
    def family(self) -> str:
        return "bd" if self in (DifferentiatorKind.BD_FIRST, DifferentiatorKind.BD_SECOND) else "tf"

    @classmethod
    def parse(cls, text: str) -> "DifferentiatorKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown differentiator {text!r}; expected one of {names}") from None


class BackwardDifference:
    """Backward-difference differentiator ``(1 - q^-1)^order / ts^order``."""

    def __init__(self, order: int, ts: float):
        if order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {order}")
        if not ts > 0:
            raise ValueError(f"ts must be positive, got {ts}")
        self.order = order
        self.ts = float(ts)
        self.reset()

    def reset(self):
        self.warm = 0
        self._prev1 = 0.0
        self._prev2 = 0.0

    @property
    def ready(self) -> bool:
        return self.warm >= self.order

    def step(self, y_k: float) -> float:
        y_k = float(y_k)
        if self.order == 1:
            out = (y_k - self._prev1) / self.ts if self.ready else math.nan
        else:
            out = (y_k - 2.0 * self._prev1 + self._prev2) / (self.ts * self.ts) if self.ready else math.nan
        self._prev2 = self._prev1
        self._prev1 = y_k
        self.warm += 1
        return out


def _default_gains(order):
    alpha = 0.5
    if order == 1:
        return alpha, alpha**2 / (2.0 - alpha), 0.0
    beta = 2.0 * (2.0 - alpha) - 4.0 * math.sqrt(1.0 - alpha)
    return alpha, beta, beta**2 / (2.0 * alpha)


def tracking_filter_matrix(order: int, ts: float, alpha: float, beta: float, gamma: float = 0.0) -> np.ndarray:
    """Closed-loop transition matrix ``(I - K H) F`` of the steady-state filter."""
    if order == 1:
        f = np.array([[1.0, ts], [0.0, 1.0]])
        k = np.array([alpha, beta / ts])
    else:
        f = np.array([[1.0, ts, ts * ts / 2.0], [0.0, 1.0, ts], [0.0, 0.0, 1.0]])
        k = np.array([alpha, beta / ts, 2.0 * gamma / (ts * ts)])
    h = np.zeros(order + 1)
    h[0] = 1.0
    return (np.eye(order + 1) - np.outer(k, h)) @ f


class TrackingFilter:
    """Steady-state alpha-beta (order 1) or alpha-beta-gamma (order 2) filter.

    Integrator dynamics predict position, velocity and (for order 2)
    acceleration over one sample; the position residual corrects each state
    with fixed gains ``alpha``, ``beta / ts`` and ``2 gamma / ts**2``. The
    state is initialized at the first sample with zero rates, which keeps the
    filter linear in its input.

    Defaults: ``alpha = 0.5``; order 1 uses ``beta = alpha**2 / (2 - alpha)``;
    order 2 uses ``beta = 2 (2 - alpha) - 4 sqrt(1 - alpha)`` and
    ``gamma = beta**2 / (2 alpha)``.
    """

    def __init__(self, order: int, ts: float, alpha: float | None = None, beta: float | None = None,
                 gamma: float | None = None):
        if order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {order}")
        if not ts > 0:
            raise ValueError(f"ts must be positive, got {ts}")
        da, db, dg = _default_gains(order)
        self.order = order
        self.ts = float(ts)
        self.alpha = da if alpha is None else float(alpha)
        self.beta = db if beta is None else float(beta)
        self.gamma = dg if gamma is None else float(gamma)
        if order == 1 and self.gamma != 0.0:
            raise ValueError("gamma only applies to the second-order filter")
        gains = (self.alpha, self.beta) + ((self.gamma,) if order == 2 else ())
        if any(not g > 0 for g in gains):
            raise ValueError(f"tracking filter gains must be positive, got {gains}")
        radius = max(abs(np.linalg.eigvals(tracking_filter_matrix(order, self.ts, self.alpha, self.beta, self.gamma))))
        if not radius < 1.0:
            raise ValueError(f"unstable tracking filter gains {gains}: spectral radius {radius:.6g} >= 1")
        self._kv = self.beta / self.ts
        self._ka = 2.0 * self.gamma / (self.ts * self.ts)
        self.reset()

    def reset(self):
        self.warm = 0
        self.x = 0.0
        self.v = 0.0
        self.a = 0.0

    @property
    def ready(self) -> bool:
        return self.warm >= self.order

    def step(self, y_k: float) -> float:
        y_k = float(y_k)
        ts = self.ts
        valid = self.ready
        if self.warm == 0:
            self.x = y_k
        elif self.order == 1:
            xp = self.x + ts * self.v
            r = y_k - xp
            self.x = xp + self.alpha * r
            self.v = self.v + self._kv * r
        else:
            xp = self.x + ts * self.v + 0.5 * ts * ts * self.a
            vp = self.v + ts * self.a
            r = y_k - xp
            self.x = xp + self.alpha * r
            self.v = vp + self._kv * r
            self.a = self.a + self._ka * r
        self.warm += 1
        if not valid:
            return math.nan
        return self.v if self.order == 1 else self.a


def make_differentiator(kind: DifferentiatorKind, ts: float, **gains):
    if kind.family == "bd":
        if gains:
            raise ValueError("backward differences take no gains")
        return BackwardDifference(kind.order, ts)
    return TrackingFilter(kind.order, ts, **gains)


def differentiate(kind: DifferentiatorKind, samples, ts: float, **gains) -> np.ndarray:
    """Run ``kind`` causally over ``samples``; the first ``kind.order`` entries are nan."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    diff = make_differentiator(kind, ts, **gains)
    out = np.full(samples.shape, np.nan)
    if kind is DifferentiatorKind.BD_FIRST:
        out[1:] = (samples[1:] - samples[:-1]) / diff.ts
    elif kind is DifferentiatorKind.BD_SECOND:
        out[2:] = (samples[2:] - 2.0 * samples[1:-1] + samples[:-2]) / (diff.ts * diff.ts)
    else:
        step = diff.step
        for k, y_k in enumerate(samples.tolist()):
            out[k] = step(y_k)
    return out


def run_differentiator(kind: DifferentiatorKind, trace: SampledTrace, **gains) -> np.ndarray:
    """Estimates aligned with ``trace`` indices, computed from ``trace.y_m``."""
    return differentiate(kind, trace.y_m, trace.ts, **gains)
