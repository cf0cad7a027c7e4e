"""
Unit tests for the config module.
"""
import os

from monomial.utils.config import Settings, parse_optional_int, settings


def test_settings_loads_values(monkeypatch):
    """Environment variables override the defaults"""
    monkeypatch.setenv("DEFAULT_TRIALS", "7")
    monkeypatch.setenv("MEM_MB", "64")
    loaded = Settings()
    assert loaded.DEFAULT_TRIALS == 7
    assert loaded.MEM_MB == 64
    assert loaded.CLIQUE_ORACLE_PRIME == 101  # Default value


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("MONOMIAL_SEED", "0x10")
    assert Settings().MONOMIAL_SEED == 16
    monkeypatch.setenv("MONOMIAL_SEED", "not a number")
    assert Settings().MONOMIAL_SEED is None
    monkeypatch.delenv("MONOMIAL_SEED")
    assert Settings().MONOMIAL_SEED is None


def test_parse_optional_int():
    assert parse_optional_int(None) is None
    assert parse_optional_int("  ") is None
    assert parse_optional_int("42") == 42
    assert parse_optional_int("4.2") is None


def test_settings_creates_directories():
    for path in (settings.DATA_DIR, settings.PHF_CACHE_DIR, settings.REPORTS_DIR, settings.LOGS_DIR):
        assert os.path.isdir(path)


def test_memory_budget():
    assert settings.memory_budget_bytes(1) == 1024 * 1024
    assert settings.memory_budget_bytes() <= settings.MEM_MB * 1024 * 1024
