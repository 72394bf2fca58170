# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import multiprocessing
import traceback
from itertools import islice
from multiprocessing import current_process
from typing import Iterable, Optional, Tuple

from .graph_core import Instance, PositionTable, Solution
from .kdsp import CrossingGuess, GuessEvaluator
from .logger import LogEventQueue


# Process-wide (guess pool worker) globals. The evaluator holds the caches of
# one instance and is built once per worker.
proc_scope_evaluator: Optional[GuessEvaluator] = None
proc_scope_leq: Optional[LogEventQueue] = None

# Guesses submitted per round, as a multiple of threads * chunk_size.
_ROUND_FACTOR = 4


def init_proc_scope(instance: Instance, positions: PositionTable, log_event_queue: Optional[LogEventQueue]):
    global proc_scope_evaluator, proc_scope_leq
    proc_scope_evaluator = GuessEvaluator(instance, positions)
    proc_scope_leq = log_event_queue


def process_guess(guess: CrossingGuess) -> Optional[Solution]:
    """
    Evaluate one guess inside a pool worker.
    """
    try:
        return proc_scope_evaluator.solve(guess)
    except Exception as err:
        if proc_scope_leq is not None:
            proc_scope_leq.warning("{0}: Exception in process_guess(): {1}\n{2}".format(
                current_process().name, type(err).__name__, traceback.format_exc()))
        raise err


def evaluate_guesses_parallel(instance: Instance, positions: PositionTable, guesses: Iterable[CrossingGuess],
                              threads: int, chunk_size: int, log_event_queue: Optional[LogEventQueue] = None) \
        -> Tuple[int, Optional[CrossingGuess], Optional[Solution]]:
    """
    Evaluate guesses on a pool of `threads` workers. Guesses are submitted in
    rounds and results are read back in stream order, so the verified guess
    that comes first in the stream wins regardless of worker timing. Returns
    the number of guesses consumed up to the winner, the winner and its solution.
    """
    stream = iter(guesses)
    round_size = threads * chunk_size * _ROUND_FACTOR
    tried = 0
    with multiprocessing.Pool(processes=threads, initializer=init_proc_scope,
                              initargs=(instance, positions, log_event_queue)) as pool:
        while True:
            batch = list(islice(stream, round_size))
            if not batch:
                return tried, None, None
            for guess, solution in zip(batch, pool.imap(process_guess, batch, chunk_size)):
                tried += 1
                if solution is not None:
                    # Leaving the with block terminates the remaining workers.
                    return tried, guess, solution
