"""Standard error of the Monte Carlo white-noise RMSE versus trial count.

The scaled column ``se * sqrt(trials)`` should stay roughly constant.
"""

import math

from diffsnr.differentiators import DifferentiatorKind
from diffsnr.metrics import exact_rmse_white
from diffsnr.signals import HarmonicSpec
from diffsnr.sweeps import monte_carlo_rmse

SIGNAL = HarmonicSpec(1.0, 2 * math.pi)
TS = 0.01
N = 10_000

if __name__ == "__main__":
    for kind in (DifferentiatorKind.BD_FIRST, DifferentiatorKind.BD_SECOND):
        exact = exact_rmse_white(1.0, TS, kind.order)
        print(f"{kind.value}: exact {exact:.6g}")
        print(f"{'trials':>8} {'rmse':>12} {'se':>10} {'se*sqrt(n)':>12}")
        for trials in (4, 16, 64, 256):
            mean, se = monte_carlo_rmse(SIGNAL, 1.0, TS, N, trials, 0, kind)
            print(f"{trials:>8} {mean:>12.6g} {se:>10.4g} {se * math.sqrt(trials):>12.4g}")
