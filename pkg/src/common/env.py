"""Environment variable loading utilities.

Centralizes .env file loading so every entry point sees the same overrides
(`RESIL_DT`, `LOG_LEVEL`).
"""

import os
from functools import cache
from typing import Optional

from dotenv import load_dotenv

from src.constants.config import ENV_PATH


@cache
def load_project_env() -> None:
    """Load config/.env once for the entire project.

    Uses @cache so the body only executes once; later calls return
    immediately. Variables already set in the process environment win.
    """
    load_dotenv(ENV_PATH)


def get_env(key: str, default: Optional[str] = None) -> Optional[str]:
    """Get environment variable, loading .env if needed.

    Args:
        key: Environment variable name
        default: Default value if not found

    Returns:
        Environment variable value or default
    """
    load_project_env()
    return os.getenv(key, default)


def get_env_float(key: str, default: Optional[float] = None) -> Optional[float]:
    """Get a positive float from the environment.

    Args:
        key: Environment variable name
        default: Value returned when the variable is unset or empty

    Returns:
        Parsed value or default

    Raises:
        ValueError: If the variable is set but is not a positive number
    """
    raw = get_env(key)
    if raw is None or not raw.strip():
        return default
    try:
        value = float(raw)
    except ValueError as e:
        raise ValueError(f"{key} must be a number, got {raw!r}") from e
    if not value > 0:
        raise ValueError(f"{key} must be positive, got {raw!r}")
    return value
