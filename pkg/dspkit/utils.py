# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import logging
import signal
import sys
import time
from contextlib import contextmanager
from typing import Dict, Iterator, Optional, Union

import psutil

from .constants import LOGGER_NAME


logger = logging.getLogger(LOGGER_NAME)


class InstanceFormatError(Exception):
    """
    Raised when an instance, solution or MCC file does not follow its line format.
    """
    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = "line {0}: {1}".format(line_number, message)
        super().__init__(message)
        self.line_number = line_number


class InvalidInstanceError(Exception):
    """
    Raised when a well-formed instance violates an invariant: duplicate edge,
    self-loop, repeated terminal, vertex id out of range or k = 0.
    """
    pass


class InvalidConfigurationError(Exception):
    """
    Raised when the solver configuration file fails strict validation.
    """
    pass


class GeometryError(Exception):
    """
    Raised when a geometric precondition does not hold (a path that must be
    colored is not) or when an asserted property of the embedding is violated.
    """
    pass


class CyclicGraphError(Exception):
    """
    Raised when arcs meant to form a DAG contain a directed cycle.
    """
    pass


class InvalidGuessError(Exception):
    """
    Raised when a crossing guess handed to segment derivation violates its invariants.
    """
    pass


class EnumerationLimitError(Exception):
    """
    Raised when an exhaustive search runs out of its budget.
    """
    pass


class GenerationError(Exception):
    """
    Raised when a random generator cannot produce a valid instance within its retries.
    """
    pass


class BadRequestError(Exception):
    """
    Raised when an operation is called with arguments outside its contract.
    """
    pass


def ascii_text(data: Union[str, bytes]) -> str:
    """
    The input as ASCII text. Any other character raises InstanceFormatError
    naming its offset and line.
    """
    if isinstance(data, bytes):
        try:
            return data.decode("ascii")
        except UnicodeDecodeError as err:
            offset, line_number = err.start, data.count(b"\n", 0, err.start) + 1
    else:
        offset = next((i for i, ch in enumerate(data) if ord(ch) > 127), None)
        if offset is None:
            return data
        line_number = data.count("\n", 0, offset) + 1
    raise InstanceFormatError("non-ASCII character at offset {0}".format(offset), line_number)


def read_text(path: str) -> str:
    """
    Read a whole text file, where "-" stands for standard input.
    """
    if path == "-":
        return ascii_text(getattr(sys.stdin, "buffer", sys.stdin).read())
    with open(path, "rb") as f:
        return ascii_text(f.read())


class PhaseTimer(object):
    """
    Accumulates wall time per named phase. Phases may be entered repeatedly.
    """
    def __init__(self):
        self.seconds: Dict[str, float] = dict()

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.seconds[name] = self.seconds.get(name, 0.0) + time.perf_counter() - start

    def as_dict(self, digits: int = 6) -> Dict[str, float]:
        return {k: round(v, digits) for k, v in self.seconds.items()}


def peak_rss_mb() -> float:
    info = psutil.Process().memory_info()
    return round(info.rss / (1024 * 1024), 2)


def kill_children_procs():
    p = psutil.Process()
    children = p.children(recursive=True)
    for child in children:
        try:
            child.send_signal(signal.SIGKILL)
        except psutil.NoSuchProcess:
            # Already gone.
            continue
        logger.debug("Killed leftover child process {0}".format(child.pid))
