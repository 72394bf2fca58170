# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import cProfile
import json
import logging
import os
import sys
import traceback
from argparse import Namespace
from typing import Optional

from .constants import LOGGER_NAME, EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_UNKNOWN
from .dsp2 import Dsp2Solver
from .export_dot import projection_graph, render
from .graph_core import Instance, Solution, compute_positions, format_instance, format_solution, parse_instance, \
    parse_solution, verify_solution
from .instances import builtin_fig1, format_mcc, gen_grid, gen_mcc_reduction, gen_random, gen_random_mcc, \
    parse_mcc
from .kdsp import KdspSolver, SolveOutcome
from .logger import LogEventQueue, setup_logging, teardown_logging
from .oracle import OracleOutcome, oracle_solve
from .parser import parse_cmdline
from .solver_config import SolverConfig
from .utils import EnumerationLimitError, GenerationError, InstanceFormatError, InvalidConfigurationError, \
    InvalidInstanceError, BadRequestError, GeometryError, PhaseTimer, kill_children_procs, peak_rss_mb, read_text


logger = logging.getLogger(LOGGER_NAME)

_EXPECTED_ERRORS = (InstanceFormatError, InvalidInstanceError, InvalidConfigurationError, GenerationError,
                    EnumerationLimitError, BadRequestError, GeometryError, OSError)


def _out(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_instance(path: str) -> Instance:
    return parse_instance(read_text(path))


def _pick_algo(algo: str, instance: Instance) -> str:
    if algo == "auto":
        return "dsp2" if instance.k == 2 else "kdsp"
    if algo == "dsp2" and instance.k != 2:
        raise BadRequestError("--algo dsp2 needs exactly 2 terminal pairs, the instance has {0}".format(instance.k))
    return algo


class _Answer(object):
    """
    Outcome of one solver run as reported by solve and bench.
    """
    def __init__(self, outcome: SolveOutcome, solution: Optional[Solution] = None, trace: Optional[dict] = None,
                 details: Optional[dict] = None):
        self.outcome = outcome
        self.solution = solution
        self.trace = trace
        self.details = details or dict()


def _run_solver(algo: str, instance: Instance, config: SolverConfig, log_queue: Optional[LogEventQueue],
                timer: Optional[PhaseTimer] = None) -> _Answer:
    if algo == "dsp2":
        result = Dsp2Solver(instance).solve()
        outcome = SolveOutcome.YES if result.found else SolveOutcome.NO
        return _Answer(outcome, result.solution, result.case.describe() if result.case else None,
                       {"dsp2_cases": result.stats.as_dict()})
    result = KdspSolver(instance, config, log_queue, timer).solve()
    trace = result.winning_guess.trace() if result.winning_guess is not None else None
    return _Answer(result.outcome, result.solution, trace,
                   {"guesses_tried": result.guesses_tried, "complete": result.complete})


def _exit_code(outcome: SolveOutcome) -> int:
    return {SolveOutcome.YES: EXIT_YES, SolveOutcome.NO: EXIT_NO, SolveOutcome.UNKNOWN: EXIT_UNKNOWN}[outcome]


def _report(instance: Instance, answer: _Answer, with_trace: bool) -> int:
    if answer.outcome is SolveOutcome.YES:
        verdict = verify_solution(instance, answer.solution)
        if not verdict.ok:
            logger.error("Refusing to print an invalid solution: {0}".format(verdict.violation))
            return EXIT_ERROR
        _out(format_solution(answer.solution))
        if with_trace and answer.trace is not None:
            _out("c trace {0}".format(json.dumps(answer.trace, sort_keys=True)))
    elif answer.outcome is SolveOutcome.NO:
        _out(format_solution(None))
    else:
        _out("unknown")
    return _exit_code(answer.outcome)


def cmd_solve(args: Namespace, config: SolverConfig, log_queue: Optional[LogEventQueue]) -> int:
    instance = _load_instance(args.instance_file)
    algo = _pick_algo(args.algo, instance)
    logger.info("Solving {0} with {1}, {2}".format(instance, algo, config))
    return _report(instance, _run_solver(algo, instance, config, log_queue), args.trace)


def cmd_oracle(args: Namespace, config: SolverConfig, log_queue: Optional[LogEventQueue]) -> int:
    instance = _load_instance(args.instance_file)
    result = oracle_solve(instance, config.limits)
    outcome = {OracleOutcome.YES: SolveOutcome.YES, OracleOutcome.NO: SolveOutcome.NO,
               OracleOutcome.LIMIT: SolveOutcome.UNKNOWN}[result.outcome]
    return _report(instance, _Answer(outcome, result.solution), False)


def cmd_gen(args: Namespace, config: SolverConfig, log_queue: Optional[LogEventQueue]) -> int:
    if args.generator == "random":
        instance = gen_random(args.n, args.p, args.k, args.seed, config.gen_retries)
        _out(format_instance(instance, ["random n={0} p={1} k={2} seed={3}".format(
            args.n, args.p, args.k, args.seed)]))
    elif args.generator == "fig1":
        _out(format_instance(builtin_fig1(), ["two pairs whose shortest paths cross"]))
    elif args.generator == "grid":
        _out(format_instance(gen_grid(args.width, args.height), ["grid {0}x{1}".format(args.width, args.height)]))
    elif args.generator == "mcc":
        mcc = parse_mcc(read_text(args.file))
        reduction = gen_mcc_reduction(mcc)
        comments = ["reduced from {0} with k={1}".format(os.path.basename(args.file), mcc.k)]
        if args.trace:
            comments.extend("vertex {0} {1}".format(v, name) for v, name in enumerate(reduction.names))
            comments.extend("merge {0} {1}".format(p, q) for p, q in reduction.merges)
        _out(format_instance(reduction.instance, comments))
    else:
        _out(format_mcc(gen_random_mcc(args.k, args.max_per_color, args.p, args.seed)))
    return EXIT_YES


def cmd_verify(args: Namespace, config: SolverConfig, log_queue: Optional[LogEventQueue]) -> int:
    instance = _load_instance(args.instance_file)
    solution = parse_solution(read_text(args.solution_file))
    if solution is None:
        _out("invalid: the solution file answers no, there are no paths to check")
        return EXIT_NO
    verdict = verify_solution(instance, solution)
    if not verdict.ok:
        _out("invalid: {0}".format(verdict.violation))
        return EXIT_NO
    _out("valid")
    return EXIT_YES


def cmd_bench(args: Namespace, config: SolverConfig, log_queue: Optional[LogEventQueue]) -> int:
    timer = PhaseTimer()
    with timer.phase("parse"):
        instance = _load_instance(args.instance_file)
    with timer.phase("positions"):
        compute_positions(instance)
    algo = _pick_algo(args.algo, instance)

    profiler = cProfile.Profile() if (args.profile or config.profile) else None
    if profiler is not None:
        profiler.enable()
    with timer.phase("solve"):
        answer = _run_solver(algo, instance, config, log_queue, timer)
    if profiler is not None:
        profiler.disable()
        target = os.path.join(args.log_folder or "/tmp", "dsp_bench_profile")
        profiler.dump_stats(target)
        logger.info("Profile written to {0}".format(target))

    record = {
        "algo": algo,
        "n": instance.n,
        "m": instance.graph.m,
        "k": instance.k,
        "verdict": answer.outcome.value,
        "phases": timer.as_dict(),
        "peak_rss_mb": peak_rss_mb(),
    }
    record.update(answer.details)
    _out(json.dumps(record, sort_keys=True))
    if answer.outcome is SolveOutcome.YES and not verify_solution(instance, answer.solution).ok:
        return EXIT_ERROR
    return _exit_code(answer.outcome)


def cmd_export_dot(args: Namespace, config: SolverConfig, log_queue: Optional[LogEventQueue]) -> int:
    instance = _load_instance(args.instance_file)
    if max(args.a, args.b) > instance.k:
        raise BadRequestError("coordinates ({0},{1}) exceed k = {2}".format(args.a, args.b, instance.k))
    solution = parse_solution(read_text(args.solution)) if args.solution else None
    _out(render(projection_graph(instance, args.a - 1, args.b - 1, solution), args.format))
    return EXIT_YES


_COMMANDS = {
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "export-dot": cmd_export_dot,
}


def run(argv=None) -> int:
    """
    Parse the command line, run one subcommand and map the outcome to the exit
    code contract: 0 yes, 1 no, 2 error, 3 unknown.
    """
    try:
        args = parse_cmdline(argv)
    except SystemExit as e:
        return EXIT_YES if not e.code else EXIT_ERROR

    log_queue, log_listener = setup_logging(args.log_folder, args.console_log_level, args.file_log_level)
    try:
        config = SolverConfig.from_args(args)
        return _COMMANDS[args.command](args, config, log_queue)
    except _EXPECTED_ERRORS as err:
        logger.error("{0}: {1}".format(type(err).__name__, err))
        sys.stderr.write("error: {0}\n".format(err))
        return EXIT_ERROR
    except Exception as err:
        logger.error("run(): Finishing prematurely after catching {0}, \nDetails: {1}".format(
            type(err).__name__, traceback.format_exc()))
        sys.stderr.write("error: {0}: {1}\n".format(type(err).__name__, err))
        # Pool workers of an interrupted guess evaluation may still be around.
        kill_children_procs()
        return EXIT_ERROR
    finally:
        teardown_logging(log_queue, log_listener)


def main():
    sys.exit(run())
