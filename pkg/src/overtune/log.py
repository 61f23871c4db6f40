"""Logging setup for the command-line tools and the service."""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Union

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Union[int, str] = logging.INFO) -> None:
    """Send log records to stderr, one line each, at the given level."""
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


@contextmanager
def stage(logger: logging.Logger, name: str) -> Iterator[None]:
    """Log one line when a pipeline stage finishes, with its duration in ms."""
    start = time.perf_counter()
    yield
    logger.info("%s done in %.1f ms", name, (time.perf_counter() - start) * 1000)
