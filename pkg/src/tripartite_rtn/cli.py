"""Command-line front end: ``tripartite-rtn [flags]`` writes a sweep as CSV.

Settings may also come from a ``key = value`` file given with ``--config``;
keys are the long flag names without the leading dashes and command-line
flags take precedence over the file.

Exit status: 0 success, 2 usage error, 3 I/O error, 4 numerical error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time

import numpy as np

from .correlations import OptimizerSettings
from .evolution import EnsembleSpec
from .linalg import NumericalError
from .sweep import MEASURES, SweepConfig, run_sweep, write_csv

log = logging.getLogger("tripartite_rtn")

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4

DEFAULTS = {
    "family": "ghz",
    "coupling": "local",
    "gamma_ratio": 0.1,
    "r": None,
    "r_min": None,
    "r_max": None,
    "r_steps": None,
    "tmax": 20.0,
    "steps": 200,
    "measures": "negativity,witness",
    "engine": "analytic",
    "trajectories": 20000,
    "seed": 0,
    "grid_per_angle": 8,
    "discord_grid_stride": 1,
    "workers": 1,
    "output": "-",
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _purity(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"purity must lie in [0, 1], got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _measures(text: str) -> str:
    items = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in items if m not in MEASURES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"measures must be a comma list from {MEASURES}, got {text!r}")
    return ",".join(items)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tripartite-rtn", description=__doc__.splitlines()[0], argument_default=argparse.SUPPRESS)
    p.add_argument("--config", help="key = value settings file")
    p.add_argument("--family", choices=["ghz", "w"])
    p.add_argument("--coupling", choices=["local", "common"])
    p.add_argument("--gamma-ratio", type=float, help="gamma / nu (nu = 1)")
    p.add_argument("--r", type=_purity, help="single purity")
    p.add_argument("--r-min", type=_purity)
    p.add_argument("--r-max", type=_purity)
    p.add_argument("--r-steps", type=_positive_int)
    p.add_argument("--tmax", type=float, help="last gamma*t of the time grid")
    p.add_argument("--steps", type=_positive_int, help="number of gamma*t points from 0 to tmax")
    p.add_argument("--measures", type=_measures, help=f"comma list from {','.join(MEASURES)}")
    p.add_argument("--engine", choices=["analytic", "mc", "both"])
    p.add_argument("--trajectories", type=_positive_int)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--grid-per-angle", type=_positive_int)
    p.add_argument("--discord-grid-stride", type=_positive_int)
    p.add_argument("--workers", type=_positive_int)
    p.add_argument("--output", help="CSV path, '-' for stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def read_config_file(path: str, parser: argparse.ArgumentParser) -> dict:
    """Parse a ``key = value`` file into typed settings, validating every key."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    settings = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        dest = key.replace("-", "_")
        if dest not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            parsed = parser.parse_args(["--" + dest.replace("_", "-"), value])
        except UsageError as exc:
            raise UsageError(f"{path}:{lineno}: invalid value for {key!r}: {exc}") from None
        settings[dest] = getattr(parsed, dest)
    return settings


def parse_config(argv=None) -> SweepConfig:
    """Resolve defaults, config file and flags (in that order) into a config."""
    parser = build_parser()
    flags = vars(parser.parse_args(argv))
    settings = dict(DEFAULTS)
    if "config" in flags:
        settings.update(read_config_file(flags["config"], parser))
    settings.update({k: v for k, v in flags.items() if k in DEFAULTS})

    range_keys = ("r_min", "r_max", "r_steps")
    given = [k for k in range_keys if settings[k] is not None]
    if given and settings["r"] is not None:
        raise UsageError("give either r or r_min/r_max/r_steps, not both")
    if given:
        if len(given) != 3:
            raise UsageError(f"r range needs all of {', '.join(range_keys)}")
        if settings["r_max"] < settings["r_min"]:
            raise UsageError("r_max must not be below r_min")
        r_grid = np.linspace(settings["r_min"], settings["r_max"], settings["r_steps"])
    else:
        r_grid = [1.0 if settings["r"] is None else settings["r"]]

    if settings["tmax"] < 0:
        raise UsageError("tmax must be non-negative")
    if settings["gamma_ratio"] <= 0:
        raise UsageError("gamma_ratio must be positive")
    t_grid = np.linspace(0.0, settings["tmax"], settings["steps"])

    try:
        return _build_config(settings, r_grid, t_grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _build_config(settings, r_grid, t_grid) -> SweepConfig:
    return SweepConfig(
        family=settings["family"],
        coupling=settings["coupling"],
        gamma_ratio=settings["gamma_ratio"],
        r_grid=tuple(float(x) for x in r_grid),
        t_grid=tuple(float(x) for x in t_grid),
        measures=frozenset(settings["measures"].split(",")),
        engine=settings["engine"],
        ensemble=EnsembleSpec(settings["trajectories"], settings["seed"]),
        optimizer=OptimizerSettings(grid_points_per_angle=settings["grid_per_angle"]),
        discord_grid_stride=settings["discord_grid_stride"],
        workers=settings["workers"],
        output=settings["output"],
    )


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"tripartite-rtn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    verbose = "-v" in argv or "--verbose" in argv
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")

    start = time.perf_counter()
    try:
        handle = sys.stdout if cfg.output == "-" else open(cfg.output, "w", encoding="utf-8", newline="")
    except OSError as exc:
        print(f"tripartite-rtn: cannot open {cfg.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        n = write_csv(run_sweep(cfg), handle)
    except NumericalError as exc:
        print(f"tripartite-rtn: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"tripartite-rtn: write failed: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        if handle is not sys.stdout:
            handle.close()
    log.info("%d rows in %.2f s", n, time.perf_counter() - start)
    return 0


if __name__ == "__main__":
    sys.exit(main())
