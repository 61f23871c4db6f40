"""Command-line front end."""

import logging
import sys
from typing import Optional, Sequence

from overtune.cli.commands import COMMANDS
from overtune.cli.parser import build_parser
from overtune.config import Settings
from overtune.errors import MetricError, ParameterError, ValidationError
from overtune.log import setup_logging

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_ARGUMENT = 3


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.

    0 on success, 1 on I/O errors, 2 on schema or validation errors and
    3 on argument errors.
    """
    try:
        settings = Settings.from_env()
        args = build_parser().parse_args(argv)
    except ParameterError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_ARGUMENT

    setup_logging(args.log_level or settings.log_level)
    handler = COMMANDS[args.command]
    try:
        return handler(args, settings)
    except (ValidationError, MetricError) as e:
        LOGGER.error("%s [%s]", e.message, e.code)
        return EXIT_VALIDATION
    except ParameterError as e:
        LOGGER.error("%s [%s]", e.message, e.code)
        return EXIT_ARGUMENT
    except OSError as e:
        LOGGER.error("%s", e)
        return EXIT_IO


__all__ = ["EXIT_ARGUMENT", "EXIT_IO", "EXIT_OK", "EXIT_VALIDATION", "build_parser", "run"]
