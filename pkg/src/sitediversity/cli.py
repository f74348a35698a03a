"""Command-line entry point.

Usage::

    sitediv outage-sweep configs/fig4_outage_vs_snr.yaml --out fig4.csv

Every command writes its CSV to ``--out`` and the resolved configuration to
the same path with a ``.config.yaml`` suffix. Exit status is 0 on success,
2 on invalid input and 3 on numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .atmosphere import CLOUD_PRESETS
from .config import RunConfig, SiteGroup, SweepSpec, load_config
from .errors import ConfigError, DomainError, NumericalError, UnsupportedConfigurationError
from .sweeps import COMMANDS

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

TABLE3_DEFAULT = RunConfig(
    sites=(SiteGroup(count=20, zenith_deg=0.0, cloud=CLOUD_PRESETS["ThinCirrus"]),),
    sweep=SweepSpec(gamma_bar_db=(24.0,)),
)


def echo_path(out: Path) -> Path:
    """Where the resolved configuration for ``out`` is written."""
    return out.with_name(out.stem + ".config.yaml")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sitediv",
        description="Outage, capacity and diversity sweeps for satellite optical downlinks with site diversity.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "outage-sweep": "exact, series and asymptotic outage versus average SNR",
        "capacity-sweep": "capacity bounds versus average SNR or zenith angle",
        "diversity": "diversity order versus number of stations or satellites",
        "aperture": "scintillation and outage versus receiver aperture",
        "mc-verify": "closed forms next to Monte Carlo estimates",
        "table3": "outage of the ground-level and high-ground cases at 0, 15, 30 and 40 degrees",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument(
            "config",
            nargs="?" if name == "table3" else None,
            help="scenario YAML file" + (" (optional)" if name == "table3" else ""),
        )
        p.add_argument("--out", type=Path, default=None, help=f"output CSV (default: {name}.csv)")
        p.add_argument("--seed", type=int, default=None, help="Monte Carlo master seed")
        p.add_argument("--trials", type=int, default=None, help="Monte Carlo trials")
        p.add_argument("--workers", type=int, default=None, help="Monte Carlo worker processes")
    return parser


def _resolve(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else TABLE3_DEFAULT
    if args.trials is not None and args.trials < 1:
        raise ConfigError("--trials must be a positive integer")
    if args.workers is not None and args.workers < 1:
        raise ConfigError("--workers must be a positive integer")
    if args.seed is not None and not 0 <= args.seed < 2**64:
        raise ConfigError("--seed must be an unsigned 64-bit integer")
    return cfg.with_mc(seed=args.seed, trials=args.trials, workers=args.workers)


def run(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    result = COMMANDS[args.command](cfg)
    out = args.out if args.out is not None else Path(f"{args.command}.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(result.to_csv())
    with open(echo_path(out), "w", encoding="utf-8", newline="") as fh:
        fh.write(cfg.to_yaml())
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (ConfigError, DomainError, UnsupportedConfigurationError) as exc:
        print(f"sitediv: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"sitediv: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"sitediv: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
