"""Command line interface for dirac-scs."""

import sys
import argparse
import cProfile
import pstats
from typing import Optional, Sequence

from . import runner
from . import config as config_mod
from .constants import (
    DEFAULT_COLOR_MODE,
    DEFAULT_LOG_TIMES_MODE,
    DEFAULT_OUTPUT_DIR,
    PARAMETER_SCHEMAS,
    VALID_COLOR_MODES,
    VALID_LOG_TIME_MODES,
)
from .errors import ValidationError
from .logger import default_logger

SUBCOMMAND_HELP = {
    "algebra-check": "Verify Clifford-algebra, bilinear and free-sector identities; writes report.json.",
    "dispersion": "Free or mean-field dispersion over a momentum range; writes dispersion.csv.",
    "factorize": "Spin-charge factorization of the dressed boost; writes factorize.json.",
    "evolve": "Evolve the pairing field; writes snapshots.csv and diagnostics.csv.",
    "kink": "Static kink oracle against the displayed profile; writes kink.csv and kink.json.",
    "travel": "Integrate the traveling-wave ODEs; writes travel.csv and travel.json.",
    "quasi": "Quasiparticle quadrature in a cosine background; writes quasi_fields.csv and quasi_residuals.json.",
    "regimes": "Classify a two-parameter scan into regimes; writes regimes.csv.",
    "gauge": "Gauge potential and field strength from phase grids; writes gauge.csv and gauge_residuals.json.",
}


def _add_global_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--output-dir",
        type=str,
        default=DEFAULT_OUTPUT_DIR,
        help="Directory receiving CSV/JSON artifacts and run.yaml.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="Worker processes for parameter scans; 0 means one per CPU.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Seed for randomized checks.",
    )
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help="Key-value parameter file (key = value per line); flags override it.",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Enable DEBUG log output",
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Drop into debugging with pdb on exceptions.",
    )
    parser.add_argument(
        "--profile",
        action="store_true",
        help="Run with cProfile and output profiling results to console.",
    )
    parser.add_argument(
        "--log-times",
        type=str,
        choices=VALID_LOG_TIME_MODES,
        default=DEFAULT_LOG_TIMES_MODE,
        help="Include timestamps in log messages, either as absolute/normal or elapsed times, both, or none.",
    )
    parser.add_argument(
        "--color",
        choices=VALID_COLOR_MODES,
        default=DEFAULT_COLOR_MODE,
        help="Colorize the log.",
    )


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Dirac fermions coupled to a pairing field: identities, dispersion, "
        "factorization, pairing dynamics and quasiparticle solutions."
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    for name, schema in PARAMETER_SCHEMAS.items():
        sub = subparsers.add_parser(name, help=SUBCOMMAND_HELP[name], description=SUBCOMMAND_HELP[name])
        _add_global_arguments(sub)
        for key, (kind, default) in schema.items():
            # None keeps "not given" distinguishable from the default so --config can fill it
            sub.add_argument(
                _flag(key),
                dest=key,
                type=kind,
                default=None,
                help=f"{kind.__name__}, default {default!r}",
            )
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI."""
    args = parse_args(argv)

    if args.profile:
        with cProfile.Profile() as pr:
            exit_code = _main(args)
            pstats.Stats(pr).sort_stats("cumulative").print_stats(50)
    else:
        exit_code = _main(args)

    return exit_code


def _main(args: argparse.Namespace) -> int:
    """Build the configuration, run, and map failures to exit statuses."""
    logger = default_logger()
    try:
        config = config_mod.RunConfig.from_args(args)
        assert config.logger is not None
        logger = config.logger
        scs_runner = runner.ScsRunner(config)
        exit_code = scs_runner.main()
        scs_runner.logger.print_log_counters()
    except KeyboardInterrupt:
        logger.error("Operation cancelled by user")
        return 2
    except ValidationError as e:
        logger.exception(e, f"Invalid configuration: {e}")
        return 1
    except Exception as e:
        logger.exception(e, f"Failed: {e}")
        return 2
    return exit_code


if __name__ == "__main__":
    sys.exit(int(main()))
