"""
Logging Utilities for the Quantum State Discrimination Toolkit
Provides standardized logging functionality across the toolkit
"""

import logging
import os
from typing import Optional, Union

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _coerce_level(level: Union[int, str]) -> int:
    if isinstance(level, str):
        resolved = logging.getLevelName(level.upper())
        return resolved if isinstance(resolved, int) else logging.INFO
    return level


def get_logger(
    name: str, log_file: Optional[str] = None, level: Union[int, str, None] = None
) -> logging.Logger:
    """
    Create a module logger

    Library modules call this with only a name and let the root logger
    (configured by setup_global_logging) own the handlers. Standalone scripts
    may pass log_file and level to get a self-contained logger.

    Args:
        name: Name of the logger (typically __name__)
        log_file: Optional path to log file
        level: Logging level; leaves the logger level untouched when None

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    if level is not None:
        logger.setLevel(_coerce_level(level))

    if log_file is None or logger.handlers:
        return logger

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    file_handler = logging.FileHandler(log_file)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)
    logger.propagate = False

    return logger


def setup_global_logging(level: Union[int, str] = logging.INFO, log_file: Optional[str] = None):
    """
    Setup global logging configuration

    Args:
        level: Logging level (default: INFO)
        log_file: Optional path to log file
    """
    level = _coerce_level(level)
    root = logging.getLogger()
    root.setLevel(level)

    formatter = logging.Formatter(LOG_FORMAT)
    if not any(isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
               for h in root.handlers):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        root.addHandler(console_handler)

    if log_file:
        path = os.path.abspath(log_file)
        for handler in root.handlers:
            if isinstance(handler, logging.FileHandler) and handler.baseFilename == path:
                handler.setLevel(level)
                return
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
