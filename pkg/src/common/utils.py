import os
from functools import cache
from typing import Any, Dict, Optional

import yaml

from src.common.env import load_project_env
from src.constants.config import CFG_PATHS
from src.constants.logging_config import LOG

# Load environment once
load_project_env()

__all__ = ["LOG", "load_yaml", "load_config", "config_section", "mkdir_p"]


def load_yaml(path):
    with open(path, "r") as f:
        return yaml.safe_load(f)


@cache
def load_config() -> Dict[str, Any]:
    """Load the first config.yaml found on CFG_PATHS.

    Returns:
        Parsed configuration, or an empty dict when no file exists so that
        callers fall back to the defaults in src.constants.resilience.
    """
    for p in CFG_PATHS:
        if p.exists():
            try:
                cfg = load_yaml(p) or {}
            except (OSError, yaml.YAMLError) as e:
                LOG.exception("Failed to load config %s: %s", p, e)
                return {}
            LOG.debug("Loaded config from %s", p)
            return cfg
    LOG.debug("No config.yaml found; using built-in defaults")
    return {}


def config_section(name: str, key: Optional[str] = None, default: Any = None) -> Any:
    """Read a section (or one key of it) from the cached configuration.

    Args:
        name: Top-level section, e.g. 'integrator'
        key: Optional key inside the section
        default: Returned when the section or key is missing

    Returns:
        The configured value or default
    """
    section = load_config().get(name) or {}
    if key is None:
        return section or default
    return section.get(key, default)


def mkdir_p(path):
    os.makedirs(path, exist_ok=True)
