"""
Logging configuration using Rich.
"""

import logging
import os

from rich.console import Console
from rich.logging import RichHandler

THIRD_PARTY_LOGGERS = ("numpy", "scipy", "matplotlib", "asyncio")


def setup_logging() -> None:
    """
    Route all domcert logging through a Rich handler on stderr.

    - Level from DOMCERT_LOG_LEVEL, or DEBUG when DOMCERT_DEBUG is set, else INFO
    - Reports on stdout stay clean because the handler writes to stderr
    - Third-party loggers are held at WARNING unless debugging
    """
    debug_enabled = is_debug_enabled()
    log_level = os.getenv("DOMCERT_LOG_LEVEL", "DEBUG" if debug_enabled else "INFO").upper()

    handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        show_time=True,
        show_path=False,
    )

    logging.basicConfig(
        level=log_level,
        format="%(name)s: %(message)s",
        handlers=[handler],
        force=True,
    )

    _suppress_general_libraries(debug_enabled)


def _suppress_general_libraries(debug_enabled: bool) -> None:
    third_party_level = logging.DEBUG if debug_enabled else logging.WARNING
    for name in THIRD_PARTY_LOGGERS:
        logging.getLogger(name).setLevel(third_party_level)


def is_debug_enabled() -> bool:
    """Check if debug mode is enabled via environment variables."""
    return os.getenv("DOMCERT_DEBUG", "").lower() in ("1", "true", "yes")
