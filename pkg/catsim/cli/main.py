"""Entrypoint: `python -m catsim.cli.main run --config PATH`."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from catsim.cli.runner import EXIT_INVALID, EXIT_NUMERICAL, EXIT_OK, run_scenario
from catsim.config.scenario import load_config
from catsim.errors import CatSimError, NumericalError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catsim", description="Trapped-ion cavity cat-state simulator")
    commands = parser.add_subparsers(dest="command", required=True)
    run = commands.add_parser("run", help="Run the scenario described by a config file")
    run.add_argument("--config", required=True, help="Path to a key = value scenario config")
    run.add_argument("--output-dir", default=None, help="Override output_dir from the config")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for numerical failures.
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        cfg = load_config(args.config, args.output_dir)
    except NumericalError as exc:
        logger.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (CatSimError, ValueError) as exc:
        logger.error("Invalid config: %s", exc)
        return EXIT_INVALID

    logger.info("Loaded %s scenario from %s", cfg.scenario, args.config)
    return run_scenario(cfg).exit_code


def main() -> None:
    logging.basicConfig(level=logging.INFO)
    sys.exit(run())


if __name__ == "__main__":
    main()
