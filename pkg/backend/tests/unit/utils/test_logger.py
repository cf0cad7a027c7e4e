"""
Unit tests for the logger module.
"""
import logging
import os
from logging.handlers import RotatingFileHandler

from monomial.utils import logger as logger_module
from monomial.utils.config import settings
from monomial.utils.logger import configure_loggers, get_logger, set_level, setup_logger, tester_logger


def test_setup_logger():
    logger = setup_logger("test_logger")
    assert logger.name == "test_logger"
    assert logger.level == getattr(logging, settings.LOG_LEVEL.upper())
    assert not logger.propagate
    assert len(logger.handlers) == 1
    assert isinstance(logger.handlers[0], logging.StreamHandler)

    # a second setup replaces the handlers instead of stacking them
    assert len(setup_logger("test_logger").handlers) == 1


def test_get_logger():
    assert get_logger("tester") is tester_logger
    component = get_logger("test_component")
    assert component.name == "test_component"
    assert not any(isinstance(h, logging.FileHandler) for h in component.handlers)


def test_set_level():
    set_level("DEBUG")
    try:
        assert get_logger("algebra").level == logging.DEBUG
        assert get_logger("bench").level == logging.DEBUG
    finally:
        set_level(settings.LOG_LEVEL.upper())
    assert get_logger("algebra").level == getattr(logging, settings.LOG_LEVEL.upper())


def test_configure_loggers(tmp_path, monkeypatch):
    monkeypatch.setattr(logger_module, "_loggers_configured", False)
    monkeypatch.setattr(settings, "LOGS_DIR", settings.LOGS_DIR)
    configure_loggers(str(tmp_path))

    tester = get_logger("tester")
    assert any(isinstance(h, RotatingFileHandler) for h in tester.handlers)
    tester.info("message from test_configure_loggers")
    assert os.path.exists(tmp_path / "tester.log")
    assert os.path.exists(tmp_path / "cli.log")

    # configuring twice is a no-op
    configure_loggers(str(tmp_path / "elsewhere"))
    assert not os.path.exists(tmp_path / "elsewhere")
