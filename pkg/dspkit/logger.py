# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import logging
import multiprocessing
import os
from enum import Enum
from logging.handlers import QueueHandler, QueueListener, RotatingFileHandler
from typing import Optional, Tuple

from .constants import LOGGER_NAME, LOG_MESSAGE_MAX_CHARS


class LogLevel(Enum):
    CRITICAL = logging.CRITICAL
    FATAL = CRITICAL
    ERROR = logging.ERROR
    WARNING = logging.WARNING
    WARN = WARNING
    INFO = logging.INFO
    DEBUG = logging.DEBUG
    NOTSET = logging.NOTSET


class LogEventQueue(object):
    """
    Process-safe carrier of log records. Guess-evaluation pool workers get a
    handle through the pool initializer and log through it directly, so that
    no logging module state has to be shared with them.
    """
    def __init__(self):
        self._queue = multiprocessing.Queue()
        self._closed = False

    def put_nowait(self, record: Optional[logging.LogRecord]):
        self.put(record)

    def put(self, record: Optional[logging.LogRecord]):
        if self._closed:
            return
        if record is None:
            self._queue.put(None)
            self._closed = True
            return
        msg = record.getMessage()
        if len(msg) > LOG_MESSAGE_MAX_CHARS:
            msg = msg[:LOG_MESSAGE_MAX_CHARS] + "...LOG TRUNCATED..."
        # Arguments are folded in so the record pickles regardless of their types.
        record.msg = msg
        record.args = None
        record.exc_info = None
        self._queue.put(record)

    def get(self, block=True):
        """
        Only intended for usage by the single listener of the queue.
        """
        return self._queue.get(block)

    def log(self, level: LogLevel, msg: str):
        self.put(logging.LogRecord(LOGGER_NAME, int(level.value), "", 0, msg, None, None))

    # Convenience functions for the common LogLevels.
    def debug(self, msg: str):
        self.log(LogLevel.DEBUG, msg)

    def info(self, msg: str):
        self.log(LogLevel.INFO, msg)

    def warning(self, msg: str):
        self.log(LogLevel.WARNING, msg)

    def error(self, msg: str):
        self.log(LogLevel.ERROR, msg)

    def critical(self, msg: str):
        self.log(LogLevel.CRITICAL, msg)

    def fatal(self, msg: str):
        self.log(LogLevel.FATAL, msg)


def setup_logging(log_folder, console_log_level, file_log_level) -> Tuple[LogEventQueue, QueueListener]:
    """
    Route every "dsp" log record through a LogEventQueue to a single listener
    that writes to the console and, if requested, to a rotating log file.
    Pool workers forked later inherit the queue handler. Finalize with
    teardown_logging() on exit of the top-level process.
    :param log_folder: if set, the place to log files as well (otherwise no log files)
    :param console_log_level: log level for console
    :param file_log_level: log level for file
    :return: pair of the log_queue, log_listener which are provided for proper disposal.
    """
    formatter = logging.Formatter(
        u'%(asctime)s.%(msecs)03d:%(levelname)s:%(processName)s:%(message)s', '%Y-%m-%d %H:%M:%S')

    console_log = logging.StreamHandler()
    console_log.setLevel(console_log_level)
    console_log.setFormatter(formatter)
    handlers = [console_log]

    if log_folder is not None:
        os.makedirs(log_folder, exist_ok=True)
        file_log = RotatingFileHandler(
            os.path.join(log_folder, "run.log"),
            mode="a",
            maxBytes=50*1024*1024,
            backupCount=20,
            delay=False,
            encoding="utf-8",
        )
        file_log.setLevel(file_log_level)
        file_log.setFormatter(formatter)
        handlers.append(file_log)

    log_queue = LogEventQueue()
    log_listener = QueueListener(log_queue, *handlers, respect_handler_level=True)
    log_listener.start()

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False
    logger.addHandler(QueueHandler(log_queue))
    if log_folder is not None:
        logger.info("Logging to folder {0}".format(log_folder))

    return log_queue, log_listener


def teardown_logging(log_queue: LogEventQueue, log_listener: QueueListener):
    logger = logging.getLogger(LOGGER_NAME)
    for h in list(logger.handlers):
        if isinstance(h, QueueHandler) and h.queue is log_queue:
            logger.removeHandler(h)
    log_listener.stop()
