"""Write plot-ready CSVs for every preset sweep.

Run with:
    python scripts/reproduce_examples.py --outdir results [--seed 0] [--trials 10]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import replace
from pathlib import Path

from diffsnr import sweeps
from diffsnr.cli import emit_csv, print_summary


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=10)
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = {
        "example1": (sweeps.run_sweep, sweeps.example1()),
        "example2": (sweeps.run_sweep, sweeps.example2()),
        "example3": (sweeps.run_sweep, sweeps.example3(base_seed=args.seed, trials=args.trials)),
        "ratio": (sweeps.ratio_sweep, replace(sweeps.example3(sigmas=sweeps.RATIO_SIGMAS),
                                              base_seed=args.seed, trials=args.trials)),
    }
    for name, (run, config) in jobs.items():
        start = time.perf_counter()
        rows = run(config)
        path = outdir / f"{name}.csv"
        emit_csv(rows, str(path))
        print(f"== {name}: {len(rows)} rows -> {path} ({time.perf_counter() - start:.2f} s)")
        print_summary(rows)


if __name__ == "__main__":
    main()
