"""
Logger Configuration Module

Provides centralized logging configuration for all engine components.
Supports both file and console logging with different formatters.

Key Features:
- Configurable log levels
- Console output on stderr (stdout is reserved for reports)
- Area-specific loggers
- Rotating file handlers
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Dict, Optional

from .config import settings

LOGGER_FILES: Dict[str, str] = {
    "algebra": "algebra.log",
    "circuit": "circuit.log",
    "tester": "tester.log",
    "structured": "structured.log",
    "applications": "applications.log",
    "cli": "cli.log",
    "storage": "storage.log",
    "bench": "bench.log",
}


def setup_logger(name: str, log_file: Optional[str] = None, level=None) -> logging.Logger:
    """
    Set up a logger with file and console handlers.

    Args:
        name: Logger name (e.g., 'algebra', 'tester')
        log_file: Optional file name under LOGS_DIR. If None, only console logging is used
        level: Optional log level. If None, uses level from settings

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Remove any existing handlers to prevent duplicates
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    logger.setLevel(level or settings.LOG_LEVEL)
    logger.propagate = False

    file_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    console_formatter = logging.Formatter(
        '%(levelname)s - %(name)s - %(message)s'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    if log_file:
        try:
            os.makedirs(settings.LOGS_DIR, exist_ok=True)
            log_path = os.path.join(settings.LOGS_DIR, log_file)
            file_handler = RotatingFileHandler(
                log_path,
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5
            )
            file_handler.setFormatter(file_formatter)
            logger.addHandler(file_handler)
        except OSError as e:
            logger.error(f"Error setting up file handler for {name}: {str(e)}")

    return logger


log_level = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)

# Area loggers, console only until configure_loggers() runs
algebra_logger = setup_logger('algebra', None, level=log_level)
circuit_logger = setup_logger('circuit', None, level=log_level)
tester_logger = setup_logger('tester', None, level=log_level)
structured_logger = setup_logger('structured', None, level=log_level)
applications_logger = setup_logger('applications', None, level=log_level)
cli_logger = setup_logger('cli', None, level=log_level)
storage_logger = setup_logger('storage', None, level=log_level)
bench_logger = setup_logger('bench', None, level=log_level)

_known_loggers: Dict[str, logging.Logger] = {
    'algebra': algebra_logger,
    'circuit': circuit_logger,
    'tester': tester_logger,
    'structured': structured_logger,
    'applications': applications_logger,
    'cli': cli_logger,
    'storage': storage_logger,
    'bench': bench_logger,
}

_loggers_configured = False


def configure_loggers(logs_dir: Optional[str] = None) -> None:
    """
    Attach rotating file handlers to every area logger.

    Args:
        logs_dir: Directory for log files, defaults to settings.LOGS_DIR
    """
    global _loggers_configured
    if _loggers_configured:
        return

    logs_dir = logs_dir or settings.LOGS_DIR
    os.makedirs(logs_dir, exist_ok=True)
    settings.LOGS_DIR = logs_dir

    for name, log_file in LOGGER_FILES.items():
        _known_loggers[name] = setup_logger(name, log_file, level=log_level)

    _known_loggers['cli'].info(f"Loggers configured with directory: {logs_dir}")
    _loggers_configured = True


def set_level(level: str) -> None:
    """Change the level of every area logger (used by the CLI --verbose/--quiet flags)"""
    for logger in _known_loggers.values():
        logger.setLevel(level)


def get_logger(name: str, level=None) -> logging.Logger:
    """
    Get or create a logger for a component.

    For known areas, returns the pre-configured logger.
    For new names, creates a console-only logger.
    """
    if name in _known_loggers:
        return _known_loggers[name]
    return setup_logger(name, None, level=level or log_level)


__all__ = [
    'algebra_logger',
    'circuit_logger',
    'tester_logger',
    'structured_logger',
    'applications_logger',
    'cli_logger',
    'storage_logger',
    'bench_logger',
    'setup_logger',
    'get_logger',
    'configure_loggers',
    'set_level',
]
