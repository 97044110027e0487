import logging
import logging.config
from typing import Optional

from config import Config

_configured = False


def setup_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """
    Set up and return a logger instance with the specified name

    The logging configuration from Config is applied once per process;
    later calls only look the logger up. Handlers are left at NOTSET, so
    the root level alone decides what reaches the console and log file.

    Args:
        name (str): Name of the logger, typically __name__ of the module
        level (str, optional): Override for the root level, e.g. 'DEBUG'

    Returns:
        logging.Logger: Configured logger instance
    """
    global _configured
    if not _configured:
        logging.config.dictConfig(Config.LOGGING_CONFIG)
        _configured = True
    if level is not None:
        logging.getLogger().setLevel(level.upper())
    return logging.getLogger(name)
