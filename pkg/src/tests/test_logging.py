"""Unit tests for the toolkit loggers.

Run with: uv run pytest src/tests/test_logging.py -v
"""

import logging

from src.logging import ALL_LOGGERS, get_logger, set_all_levels


class TestLoggers:
    def test_single_handler(self):
        first = get_logger("rrkit.test")
        again = get_logger("rrkit.test")
        assert first is again
        assert len(again.handlers) == 1
        assert not again.propagate

    def test_set_all_levels_by_name(self):
        try:
            set_all_levels("warning")
            for name in ALL_LOGGERS:
                log = logging.getLogger(name)
                assert log.level == logging.WARNING
                assert all(h.level == logging.WARNING for h in log.handlers)
        finally:
            set_all_levels(logging.INFO)
