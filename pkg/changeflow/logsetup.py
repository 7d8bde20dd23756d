"""Logging setup shared by the CLI and library callers"""
import logging
import sys

from rich.console import Console
from rich.logging import RichHandler

from changeflow.config import settings


def configure_logging(level: str = "") -> None:
    """Route every changeflow logger to standard error"""
    level = (level or settings.LOG_LEVEL).upper()
    if settings.LOG_RICH:
        handler: logging.Handler = RichHandler(
            console=Console(stderr=True),
            show_time=False,
            show_path=False,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))

    root = logging.getLogger("changeflow")
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
