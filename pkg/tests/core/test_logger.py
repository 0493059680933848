"""Tests for logger configuration."""

import logging
import sys
from pathlib import Path

from app.core.logger import set_level, setup_logger


class TestSetupLogger:
    """Test setup_logger."""

    def test_console_handler_writes_to_stderr(self) -> None:
        """Test that console logs stay off stdout."""
        logger = setup_logger(name="regions-test-stderr", log_level="INFO")
        stream_handlers = [
            h for h in logger.handlers if isinstance(h, logging.StreamHandler)
        ]
        assert stream_handlers
        assert stream_handlers[0].stream is sys.stderr

    def test_level_from_argument(self) -> None:
        """Test that the explicit level is applied."""
        logger = setup_logger(name="regions-test-level", log_level="WARNING")
        assert logger.level == logging.WARNING

    def test_file_handler(self, tmp_path: Path) -> None:
        """Test that a log file is created when requested."""
        log_file = tmp_path / "logs" / "run.log"
        logger = setup_logger(name="regions-test-file", log_file=str(log_file))
        logger.info("hello")
        for handler in logger.handlers:
            handler.flush()
        assert log_file.exists()

    def test_handlers_not_duplicated(self) -> None:
        """Test that repeated setup does not add handlers."""
        first = setup_logger(name="regions-test-dup")
        count = len(first.handlers)
        second = setup_logger(name="regions-test-dup")
        assert second is first
        assert len(second.handlers) == count


class TestSetLevel:
    """Test set_level."""

    def test_changes_shared_logger(self) -> None:
        """Test that set_level updates the shared logger."""
        shared = logging.getLogger("regions")
        original = shared.level
        try:
            set_level("DEBUG")
            assert shared.level == logging.DEBUG
        finally:
            shared.setLevel(original)
            for handler in shared.handlers:
                handler.setLevel(original)
