"""Logging setup."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_configured = False


def configure_logging(level: str | int = "WARNING") -> None:
    """Route package logs through a rich handler on stderr.

    Args:
        level: Logging level name or number.
    """
    global _configured
    logger = logging.getLogger("gafzero")
    logger.setLevel(level if isinstance(level, int) else level.upper())
    if _configured:
        return
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    _configured = True
