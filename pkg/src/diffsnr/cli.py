"""``diffsnr`` command-line front end: run sweeps, write CSV, check identities."""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import replace

from diffsnr import metrics, sweeps
from diffsnr.config import ConfigError, parse_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_CHECK_FAILED = 4

CHECK_TOL = 1e-12
_CHECK_AMPLITUDES = (0.05, 0.2, 1.0, 3.0, 10.0)
_CHECK_OMEGAS = (0.5, 1.0, 5.0, 10.0, 50.0)
_CHECK_SIGMAS = (0.01, 0.1, 1.0, 2.0, 10.0)
_CHECK_TS = (1e-3, 5e-3, 0.01, 0.1, 1.0)

HELP_EPILOG = """\
presets (parameters are locked; only --seed/--trials may be overridden):
  example1  A=50, omega=1 rad/s, harmonic noise A_n=1, omega_n=0..10 rad/s,
            Ts=0.01 s, 100 signal periods
  example2  A=1, omega=2*pi rad/s, harmonic noise A_n=0.2, omega_n=0..10 rad/s,
            Ts=0.01 s, 100 s
  example3  A=1, omega=2*pi rad/s, white noise sigma in {0.25,0.5,1,1.5,2},
            Ts=0.01 s, 100 s, 10 trials
  ratio     example3 signal, sigma in {0.25,0.5,1,2}: RMSE_dd/RMSE_sd vs sqrt(3)/Ts
  custom    sweep described by --config (see README for the key = value schema)
  check     evaluate the closed-form RMSE/SNR identities on a 5x5 grid

exit status: 0 success, 2 configuration error, 3 runtime error,
             4 identity check failed
"""


class CliError(RuntimeError):
    pass


def format_value(value) -> str:
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "nan"
    return format(value, ".9g")


def emit_csv(rows, destination) -> None:
    """Write ``rows`` (objects with ``columns()``) to a path or text stream."""
    if not rows:
        raise ValueError("no rows to write")
    header = [name for name, _ in rows[0].columns()]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        cols = row.columns()
        if [name for name, _ in cols] != header:
            raise ValueError("rows do not share a column layout")
        writer.writerow(format_value(v) for _, v in cols)
    if hasattr(destination, "write"):
        destination.write(buf.getvalue())
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise CliError(f"cannot write {destination}: {exc.strerror or exc}") from exc


def _relative(lhs, rhs):
    return abs(lhs / rhs - 1.0)


def check_formulas(perturb: str | None = None) -> list[tuple[str, float, bool]]:
    """Worst relative residual of each closed-form identity over its parameter grid.

    ``perturb`` names an identity whose left-hand side is scaled by ``1 + 1e-6``;
    it exists so tests can confirm a broken identity is reported.
    """
    s2, s3, s6 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0)
    harmonic = {
        "harmonic_sd": lambda a, w: (metrics.exact_rmse_harmonic(a, w, 1), 1 / (s2 * metrics.snr_harmonic(a, w, 1))),
        "harmonic_dd": lambda a, w: (metrics.exact_rmse_harmonic(a, w, 2), 1 / (s2 * metrics.snr_harmonic(a, w, 2))),
    }
    white = {
        "white_sd": lambda s, ts: (metrics.exact_rmse_white(s, ts, 1), s2 / metrics.snr_white(s, ts, 1)),
        "white_dd": lambda s, ts: (metrics.exact_rmse_white(s, ts, 2), s6 / metrics.snr_white(s, ts, 2)),
        "variance_sd": lambda s, ts: (
            metrics.exact_rmse_white(s, ts, 1), math.sqrt(metrics.noise_derivative_variance(s, ts, 1))),
        "variance_dd": lambda s, ts: (
            metrics.exact_rmse_white(s, ts, 2), math.sqrt(metrics.noise_derivative_variance(s, ts, 2))),
        "ratio_dd_sd": lambda s, ts: (
            metrics.exact_rmse_white(s, ts, 2) / metrics.exact_rmse_white(s, ts, 1), metrics.rmse_ratio_white(ts)),
        "ratio_sqrt3": lambda s, ts: (metrics.rmse_ratio_white(ts) * ts, s3),
    }
    known = set(harmonic) | set(white)
    if perturb is not None and perturb not in known:
        raise ValueError(f"unknown identity {perturb!r}")

    results = []
    for table, xs, ys in ((harmonic, _CHECK_AMPLITUDES, _CHECK_OMEGAS), (white, _CHECK_SIGMAS, _CHECK_TS)):
        for name, fn in table.items():
            scale = 1.0 + 1e-6 if name == perturb else 1.0
            worst = max(_relative(lhs * scale, rhs) for x in xs for y in ys for lhs, rhs in [fn(x, y)])
            results.append((name, worst, worst < CHECK_TOL))
    return results


def print_summary(rows, out=None):
    cols = [name for name, _ in rows[0].columns()]
    keep = [c for c in cols if not c.startswith(("stderr_", "trunc_")) and c not in ("trials", "sigma_sq")]
    width = max(12, *(len(c) for c in keep))
    print("  ".join(c.rjust(width) for c in keep), file=out)
    for row in rows:
        values = dict(row.columns())
        print("  ".join(format(values[c], ".6g").rjust(width) for c in keep), file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffsnr",
        description="SNR metrics for numerical differentiation of sampled harmonic signals.",
        epilog=HELP_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("subcommand", choices=["example1", "example2", "example3", "ratio", "custom", "check"])
    parser.add_argument("--config", help="sweep configuration file (custom only)")
    parser.add_argument("--out", help="CSV destination; without it the CSV goes to stdout")
    parser.add_argument("--seed", type=int, help="base seed for white-noise trials (unsigned 64-bit)")
    parser.add_argument("--trials", type=int, help="Monte Carlo trials per white-noise grid point")
    parser.add_argument("--perturb", help=argparse.SUPPRESS)
    return parser


def resolve_config(args) -> sweeps.SweepConfig:
    if args.subcommand == "custom":
        if not args.config:
            raise ConfigError("custom requires --config PATH")
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read {args.config}: {exc.strerror or exc}") from None
        config = parse_config(text)
    else:
        if args.config:
            raise ConfigError(f"{args.subcommand} is a preset with locked parameters; --config is not allowed")
        if args.subcommand == "ratio":
            config = sweeps.example3(sigmas=sweeps.RATIO_SIGMAS)
        else:
            config = sweeps.preset(args.subcommand)
    overrides = {}
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        overrides["base_seed"] = args.seed
    if args.trials is not None:
        if config.noise_kind != "white":
            raise ConfigError("--trials only applies to white-noise sweeps")
        if args.trials < 1:
            raise ConfigError("--trials must be at least 1")
        overrides["trials"] = args.trials
    return replace(config, **overrides) if overrides else config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.subcommand == "check":
        try:
            results = check_formulas(args.perturb)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        for name, residual, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name:<12} max relative residual {residual:.3e}")
        return EXIT_OK if all(ok for *_, ok in results) else EXIT_CHECK_FAILED

    try:
        config = resolve_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        rows = sweeps.ratio_sweep(config) if args.subcommand == "ratio" else sweeps.run_sweep(config)
        if args.out:
            emit_csv(rows, args.out)
            print_summary(rows)
        else:
            emit_csv(rows, sys.stdout)
    except (CliError, sweeps.SweepError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
