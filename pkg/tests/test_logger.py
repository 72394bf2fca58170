import logging
import os
import tempfile
from unittest import TestCase, main
from unittest.mock import patch

from dspkit.constants import LOGGER_NAME, LOG_MESSAGE_MAX_CHARS
from dspkit.logger import LogEventQueue, LogLevel, setup_logging, teardown_logging
from .test_base import MockDevice


class LogEventQueueTestCase(TestCase):
    def test_levels(self):
        leq = LogEventQueue()
        leq.warning("worker {0} is slow".format(3))
        leq.fatal("gone")
        record = leq.get()
        self.assertEqual((record.levelno, record.getMessage()), (logging.WARNING, "worker 3 is slow"))
        self.assertEqual(leq.get().levelno, LogLevel.CRITICAL.value)

    def test_truncation(self):
        leq = LogEventQueue()
        leq.info("x" * (LOG_MESSAGE_MAX_CHARS + 10))
        msg = leq.get().getMessage()
        self.assertTrue(msg.endswith("...LOG TRUNCATED..."))
        self.assertEqual(msg.count("x"), LOG_MESSAGE_MAX_CHARS)

    def test_closed_after_sentinel(self):
        leq = LogEventQueue()
        leq.put(None)
        leq.error("dropped")
        self.assertIsNone(leq.get())


class SetupLoggingTestCase(TestCase):
    def test_file_log(self):
        with tempfile.TemporaryDirectory() as folder:
            with patch('sys.stderr', new=MockDevice()):
                log_queue, log_listener = setup_logging(folder, "CRITICAL", "DEBUG")
                logging.getLogger(LOGGER_NAME).info("hello {0}".format("file"))
                teardown_logging(log_queue, log_listener)
            with open(os.path.join(folder, "run.log")) as f:
                self.assertIn(":INFO:MainProcess:hello file", f.read())
        self.assertEqual(logging.getLogger(LOGGER_NAME).handlers, [])


if __name__ == '__main__':
    main()
