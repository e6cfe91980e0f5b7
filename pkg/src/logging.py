"""Loggers for the rate-region toolkit.

Everything logs to standard error; standard output is reserved for the
CSV/JSON documents the CLI emits.
"""

import logging
import sys

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def get_logger(name: str, level: int = logging.INFO) -> logging.Logger:
    """Return the named logger, attaching a stderr handler on first use.

    Args:
        name: Dotted logger name, normally under "rrkit."
        level: Initial level for the logger and its handler
    """
    log = logging.getLogger(name)
    if log.handlers:
        return log

    stream = logging.StreamHandler(sys.stderr)
    stream.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
    stream.setLevel(level)
    log.addHandler(stream)
    log.setLevel(level)
    log.propagate = False
    return log


def set_log_level(name: str, level: int) -> None:
    """Change the level of one logger and of every handler it owns."""
    log = logging.getLogger(name)
    log.setLevel(level)
    for h in log.handlers:
        h.setLevel(level)


def set_all_levels(level: int | str) -> None:
    """Apply a level (number or name such as "DEBUG") to every toolkit logger."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    for name in ALL_LOGGERS:
        set_log_level(name, level)


core_logger = get_logger("rrkit.core")
bounds_logger = get_logger("rrkit.bounds")
lab_logger = get_logger("rrkit.lab")
codebook_logger = get_logger("rrkit.codebook")
cli_logger = get_logger("rrkit.cli")

ALL_LOGGERS = (
    "rrkit.core",
    "rrkit.bounds",
    "rrkit.lab",
    "rrkit.codebook",
    "rrkit.cli",
)
