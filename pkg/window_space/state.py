"""Runtime configuration for window-space.

Values are module globals so that library calls can pick up the configured
budgets without threading them through every signature. They hold the
defaults until configure() runs.
"""

from __future__ import annotations

import os

from dotenv import load_dotenv

from .constants import (
    DEFAULT_BUDGET_MONOID,
    DEFAULT_BUDGET_PATHS,
    DEFAULT_BUDGET_STATES,
    DEFAULT_BUDGET_VARIANTS,
    DEFAULT_BUDGET_WORDS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_SEED,
    ENV_BUDGET_MONOID,
    ENV_BUDGET_PATHS,
    ENV_BUDGET_STATES,
    ENV_BUDGET_VARIANTS,
    ENV_BUDGET_WORDS,
    ENV_LOG_LEVEL,
    ENV_SEED,
)

# Configuration (set by configure() at startup)
BUDGET_STATES: int = DEFAULT_BUDGET_STATES
BUDGET_WORDS: int = DEFAULT_BUDGET_WORDS
BUDGET_MONOID: int = DEFAULT_BUDGET_MONOID
BUDGET_PATHS: int = DEFAULT_BUDGET_PATHS
BUDGET_VARIANTS: int = DEFAULT_BUDGET_VARIANTS
SEED: int = DEFAULT_SEED
LOG_LEVEL: str = DEFAULT_LOG_LEVEL

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _read_int(name: str, default: int, minimum: int = 0) -> int:
    """Read an integer env var.

    Raises:
        ValueError: If the variable is set but not an integer >= minimum.
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def _read_log_level() -> str:
    raw = os.getenv(ENV_LOG_LEVEL, DEFAULT_LOG_LEVEL).strip().upper()
    if raw not in _LOG_LEVELS:
        raise ValueError(f"{ENV_LOG_LEVEL} must be one of {', '.join(_LOG_LEVELS)}, got {raw!r}")
    return raw


def resolve_budget(budget: int | None, configured: int) -> int:
    """Return an explicit per-call budget, or the configured one when None."""
    return configured if budget is None else budget


def configure() -> None:
    """Initialize configuration from environment. Called at startup.

    Loads .env file if present, then reads the WINDOW_SPACE_* variables.
    Note: load_dotenv() does NOT override existing env vars by default.
    """
    global BUDGET_STATES, BUDGET_WORDS, BUDGET_MONOID, BUDGET_PATHS, BUDGET_VARIANTS
    global SEED, LOG_LEVEL
    load_dotenv()  # Load .env, won't override existing env vars
    BUDGET_STATES = _read_int(ENV_BUDGET_STATES, DEFAULT_BUDGET_STATES, minimum=1)
    BUDGET_WORDS = _read_int(ENV_BUDGET_WORDS, DEFAULT_BUDGET_WORDS, minimum=1)
    BUDGET_MONOID = _read_int(ENV_BUDGET_MONOID, DEFAULT_BUDGET_MONOID, minimum=1)
    BUDGET_PATHS = _read_int(ENV_BUDGET_PATHS, DEFAULT_BUDGET_PATHS, minimum=1)
    BUDGET_VARIANTS = _read_int(ENV_BUDGET_VARIANTS, DEFAULT_BUDGET_VARIANTS, minimum=1)
    SEED = _read_int(ENV_SEED, DEFAULT_SEED)
    LOG_LEVEL = _read_log_level()
