"""
Logging setup shared by the CLI and the API
"""

import logging
import sys

from nbpractice.core.config import Settings


def configure_logging(settings: Settings) -> None:
    """Send log records to stderr so stdout stays machine-readable"""
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format=settings.log_format,
        stream=sys.stderr,
    )
    logging.getLogger("nbpractice").setLevel(getattr(logging, settings.log_level))
