"""Logging configuration for the resilience toolkit.

The level comes from LOG_LEVEL (process environment or config/.env),
INFO when unset.
"""

import logging
from logging.handlers import RotatingFileHandler

from src.common.env import get_env

DEFAULT_LEVEL = "INFO"

# Package-wide logger
LOG = logging.getLogger("resilience")

console_handler = logging.StreamHandler()
console_handler.setLevel(logging.DEBUG)

formatter = logging.Formatter("%(asctime)s %(levelname)s %(message)s")
console_handler.setFormatter(formatter)

if not LOG.handlers:
    LOG.addHandler(console_handler)


def resolve_level(name=None) -> int:
    """Map a level name such as 'debug' to its logging constant.

    Unknown names fall back to INFO with a warning.
    """
    if name is None:
        name = get_env("LOG_LEVEL", DEFAULT_LEVEL) or DEFAULT_LEVEL
    level = logging.getLevelName(name.strip().upper())
    if not isinstance(level, int):
        LOG.warning("Unknown LOG_LEVEL %r; using %s", name, DEFAULT_LEVEL)
        return logging.INFO
    return level


LOG.setLevel(resolve_level())


def setup_file_logging(log_file_path, max_bytes=5 * 1024 * 1024, backup_count=5):
    """Add a rotating file handler to the package logger.

    Args:
        log_file_path: Path to the log file
        max_bytes: Size at which the file rotates (default: 5MB)
        backup_count: Rotated files to keep (default: 5)

    Returns:
        The handler, so callers can remove it when done
    """
    file_handler = RotatingFileHandler(
        log_file_path, maxBytes=max_bytes, backupCount=backup_count
    )
    file_handler.setFormatter(formatter)
    LOG.addHandler(file_handler)
    return file_handler
