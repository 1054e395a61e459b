"""Configuration-related constants and paths.

This module contains the file paths used throughout the application:
where the YAML defaults live, where bundled model files are kept and
where sweep output goes by default.
"""

from pathlib import Path

# `PROJECT_ROOT` points to the repository root (one level above `src/`).
PROJECT_ROOT = Path(__file__).resolve().parents[2]

# Configuration files - check the working directory first, then the project
CFG_PATHS = [
    Path("config.yaml").resolve(),  # Current working directory
    Path("config/config.yaml").resolve(),  # config/ subdirectory of cwd
    PROJECT_ROOT / "config.yaml",  # Project root
    PROJECT_ROOT / "config" / "config.yaml",  # Project config/ directory
]

ENV_PATH = PROJECT_ROOT / "config" / ".env"

# Bundled model definitions (underwater robot, ADMIRE variants)
MODELS_DIR = PROJECT_ROOT / "models"

# Default destination for sweep CSVs
OUTPUT_DIR = PROJECT_ROOT / "data" / "sweeps"
