"""
Structured logging configuration.
"""
import logging
import sys
from app.core.config import settings


def setup_logging(level: str = None):
    """Configure application-wide logging on stderr (stdout carries JSON reports)."""
    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper()),
        format=settings.log_format,
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=level is not None,
    )

    # Set specific log levels for third-party libraries
    logging.getLogger("sqlalchemy.engine").setLevel(logging.WARNING)

    return logging.getLogger("torelli")


# Initialize logger
logger = setup_logging()
