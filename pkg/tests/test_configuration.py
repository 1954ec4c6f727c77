"""Tests for window-space configuration."""

import pytest
from dotenv import load_dotenv

from window_space import state
from window_space.constants import DEFAULT_BUDGET_STATES, DEFAULT_LOG_LEVEL, DEFAULT_SEED

_GLOBALS = (
    "BUDGET_STATES",
    "BUDGET_WORDS",
    "BUDGET_MONOID",
    "BUDGET_PATHS",
    "BUDGET_VARIANTS",
    "SEED",
    "LOG_LEVEL",
)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """No WINDOW_SPACE_* variables, no .env file, and globals restored afterwards."""
    for name in _GLOBALS:
        monkeypatch.setattr(state, name, getattr(state, name))
        monkeypatch.delenv(f"WINDOW_SPACE_{name}", raising=False)
    monkeypatch.chdir(tmp_path)
    return monkeypatch


class TestConfigure:
    """Tests for configure()."""

    def test_defaults(self, clean_env):
        """Without environment variables the defaults apply."""
        state.configure()
        assert state.BUDGET_STATES == DEFAULT_BUDGET_STATES
        assert state.SEED == DEFAULT_SEED
        assert state.LOG_LEVEL == DEFAULT_LOG_LEVEL

    def test_env_overrides(self, clean_env):
        clean_env.setenv("WINDOW_SPACE_BUDGET_STATES", "128")
        clean_env.setenv("WINDOW_SPACE_SEED", "42")
        clean_env.setenv("WINDOW_SPACE_LOG_LEVEL", "debug")
        state.configure()
        assert state.BUDGET_STATES == 128
        assert state.SEED == 42
        assert state.LOG_LEVEL == "DEBUG"

    def test_dotenv_file(self, clean_env, tmp_path):
        """A .env file fills unset variables but never overrides set ones."""
        (tmp_path / ".env").write_text("WINDOW_SPACE_BUDGET_WORDS=99\nWINDOW_SPACE_SEED=5\n")
        # register both names so values loaded from the file are removed afterwards
        clean_env.setenv("WINDOW_SPACE_BUDGET_WORDS", "")
        clean_env.delenv("WINDOW_SPACE_BUDGET_WORDS")
        clean_env.setenv("WINDOW_SPACE_SEED", "7")
        clean_env.setattr(state, "load_dotenv", lambda: load_dotenv(tmp_path / ".env"))
        state.configure()
        assert state.BUDGET_WORDS == 99
        assert state.SEED == 7

    def test_invalid_integer(self, clean_env):
        clean_env.setenv("WINDOW_SPACE_BUDGET_STATES", "many")
        with pytest.raises(ValueError, match="must be an integer"):
            state.configure()

    def test_budget_must_be_positive(self, clean_env):
        clean_env.setenv("WINDOW_SPACE_BUDGET_PATHS", "0")
        with pytest.raises(ValueError, match=">= 1"):
            state.configure()

    def test_invalid_log_level(self, clean_env):
        clean_env.setenv("WINDOW_SPACE_LOG_LEVEL", "LOUD")
        with pytest.raises(ValueError, match="WINDOW_SPACE_LOG_LEVEL"):
            state.configure()


class TestResolveBudget:
    """Tests for per-call budget overrides."""

    def test_explicit_budget_wins(self):
        assert state.resolve_budget(10, 1000) == 10

    def test_none_uses_configured(self):
        assert state.resolve_budget(None, 1000) == 1000
