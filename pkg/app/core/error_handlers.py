"""
Global error handling for the command-line front end.
"""
import json
import logging
import sys

from pydantic import ValidationError

from app.core.exceptions import TorelliError, MalformedInput
from app.core.logging_config import logger

DOMAIN_ERROR_EXIT = 1
MALFORMED_INPUT_EXIT = 2

_MALFORMED = (MalformedInput, ValidationError, json.JSONDecodeError, FileNotFoundError, IsADirectoryError)


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the process exit code."""
    if isinstance(exc, _MALFORMED):
        return MALFORMED_INPUT_EXIT
    if isinstance(exc, TorelliError):
        return DOMAIN_ERROR_EXIT
    raise exc


def report_error(exc: BaseException, stream=None) -> int:
    """Log the error, write `<ErrorName>: <message>` to stderr and return the exit code."""
    code = exit_code_for(exc)
    name = exc.__class__.__name__
    detail = str(exc).splitlines()[0] if str(exc) else ""
    logger.error(f"{name}: {detail}", exc_info=logger.isEnabledFor(logging.DEBUG))
    print(f"{name}: {detail}", file=stream or sys.stderr)
    return code
