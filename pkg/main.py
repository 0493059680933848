"""Command-line entry point."""

import argparse
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

# Load environment variables from .env file
load_dotenv()

from app.core.cli import build_run_config, common_arguments  # noqa: E402
from app.core.errors import ComputationError, InputError  # noqa: E402
from app.core.logger import logger, set_level  # noqa: E402

# Import feature commands
from app.features.harness.commands import register as register_harness  # noqa: E402
from app.features.mixtures.commands import register as register_mixtures  # noqa: E402
from app.features.regions.commands import register as register_regions  # noqa: E402

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTATION = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernel-regions",
        description=(
            "Exact-coverage confidence regions for the regression function of "
            "binary classification"
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_arguments()
    register_regions(subparsers, common)
    register_harness(subparsers, common)
    register_mixtures(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_level(args.log_level)

    try:
        run = build_run_config(args, args.command)
        logger.info(f"Running '{run.command}' with seed {run.seed} ({run.algorithm})")
        return int(args.handler(run))
    except (InputError, ValidationError) as e:
        logger.error(f"'{args.command}' rejected its input: {e}")
        return EXIT_USAGE
    except ComputationError as e:
        logger.error(f"'{args.command}' failed: {e}")
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
