# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import argparse
from argparse import Namespace


def check_positive(value):
    """
    Ensure an argument is positive integer
    :param value: argument to check
    :return: integer cast of the passed in value
    """
    int_value = int(value)
    if int_value <= 0:
        raise argparse.ArgumentTypeError("{0} is not a positive int value".format(value))
    return int_value


def check_non_negative(value):
    int_value = int(value)
    if int_value < 0:
        raise argparse.ArgumentTypeError("{0} is not a non-negative int value".format(value))
    return int_value


def check_probability(value):
    float_value = float(value)
    if not 0.0 < float_value <= 1.0:
        raise argparse.ArgumentTypeError("{0} is not a probability in (0, 1]".format(value))
    return float_value


def check_positive_float(value):
    float_value = float(value)
    if float_value <= 0.0:
        raise argparse.ArgumentTypeError("{0} is not a positive number".format(value))
    return float_value


def _add_algo(parser):
    parser.add_argument(
        '-algo', '--algo',
        default='auto', choices=['auto', 'dsp2', 'kdsp'],
        help="solver to run; auto picks dsp2 for two pairs and kdsp otherwise"
    )


def _add_solver_limits(parser):
    parser.add_argument(
        '-budget', '--budget',
        default=None, type=check_positive,
        help="maximum number of crossing guesses tried by kdsp (default: from the configuration)"
    )
    parser.add_argument(
        '-complete', '--require-complete',
        default=False, action='store_true',
        help="lift the guess budget so that kdsp never answers unknown"
    )
    parser.add_argument(
        '-threads', '--threads',
        default=None, type=check_positive,
        help="worker processes evaluating kdsp guesses (default: from the configuration)"
    )


def create_parser():
    parser = argparse.ArgumentParser(
        description='Exact solvers and instance tools for k disjoint shortest paths',
        add_help=True,
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    parser.add_argument(
        '-config', '--configuration-file',
        default=None,
        help='YAML or JSON solver configuration (budgets, limits, threads)'
    )
    parser.add_argument(
        '-strict_config', '--strict-configuration-validation',
        default=False, action='store_true',
        help="whether to fail an invalid configuration file"
    )
    parser.add_argument(
        '-log_folder', '--log-folder',
        default=None,
        help="Folder where logs are stored. If not provided, logs will not be written to file."
    )
    parser.add_argument(
        '-console_log_level', '--console-log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        default='WARNING', help="Set the console logging level"
    )
    parser.add_argument(
        '-file_log_level', '--file-log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        default='INFO', help="Set the file logging level"
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    solve = commands.add_parser(
        'solve', help='solve an instance file ("-" for stdin)',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_algo(solve)
    _add_solver_limits(solve)
    solve.add_argument(
        '-trace', '--trace', default=False, action='store_true',
        help="also print the case (dsp2) or the crossing guess (kdsp) behind a yes")
    solve.add_argument('instance_file')

    oracle = commands.add_parser(
        'oracle', help='solve an instance file by exhaustive search',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    oracle.add_argument(
        '-max_paths', '--max-paths', default=None, type=check_positive,
        help="shortest paths enumerated per pair (default: from the configuration)")
    oracle.add_argument(
        '-max_tuples', '--max-tuples', default=None, type=check_positive,
        help="search nodes visited (default: from the configuration)")
    oracle.add_argument(
        '-time_budget', '--time-budget', default=None, type=check_positive_float,
        help="seconds (default: from the configuration)")
    oracle.add_argument('instance_file')

    gen = commands.add_parser('gen', help='generate an instance')
    generators = gen.add_subparsers(dest='generator', metavar='generator')
    generators.required = True
    random_gen = generators.add_parser(
        'random', help='G(n, p) graph with k random pairs',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    random_gen.add_argument('-n', '--n', default=12, type=check_positive, help="vertices")
    random_gen.add_argument('-p', '--p', default=0.3, type=check_probability, help="edge probability")
    random_gen.add_argument('-k', '--k', default=2, type=check_positive, help="terminal pairs")
    random_gen.add_argument('-seed', '--seed', default=0, type=check_non_negative, help="random seed")
    generators.add_parser('fig1', help='the built-in crossing example')
    grid_gen = generators.add_parser(
        'grid', help='grid graph with two crossing corner pairs',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    grid_gen.add_argument('-width', '--width', default=10, type=check_positive)
    grid_gen.add_argument('-height', '--height', default=10, type=check_positive)
    mcc_gen = generators.add_parser(
        'mcc', help='2k-DSP instance reduced from a Multicolored Clique file',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    mcc_gen.add_argument('-file', '--file', required=True, help="MCC instance file")
    mcc_gen.add_argument(
        '-trace', '--trace', default=False, action='store_true',
        help="add the vertex provenance and the merges as comment lines")
    random_mcc = generators.add_parser(
        'random-mcc', help='random Multicolored Clique instance',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    random_mcc.add_argument('-k', '--k', default=3, type=check_positive, help="colors")
    random_mcc.add_argument('-max_per_color', '--max-per-color', default=3, type=check_positive)
    random_mcc.add_argument('-p', '--p', default=0.5, type=check_probability, help="edge probability")
    random_mcc.add_argument('-seed', '--seed', default=0, type=check_non_negative, help="random seed")

    verify = commands.add_parser('verify', help='check a solution file against an instance file')
    verify.add_argument('instance_file')
    verify.add_argument('solution_file')

    bench = commands.add_parser(
        'bench', help='solve once and print phase timings as one JSON line',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_algo(bench)
    _add_solver_limits(bench)
    bench.add_argument(
        '-profile', '--profile', default=False, action='store_true',
        help="run under cProfile and dump the statistics next to the log folder or to /tmp")
    bench.add_argument('instance_file')

    export = commands.add_parser(
        'export-dot', help='draw the projection of an instance to two coordinates',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    export.add_argument('-a', '--a', default=1, type=check_positive, help="first coordinate (1-based pair)")
    export.add_argument('-b', '--b', default=2, type=check_positive, help="second coordinate (1-based pair)")
    export.add_argument('-solution', '--solution', default=None, help="solution file whose paths are drawn")
    export.add_argument('-format', '--format', default='dot', choices=['dot', 'svg'])
    export.add_argument('instance_file')
    return parser


def parse_cmdline(args=None) -> Namespace:
    """
    Create a command line parser for the solver toolkit, and parse arguments
    :param args: arguments to parse
    :return: parsed command line arguments
    """
    parser = create_parser()
    args: Namespace = parser.parse_args(args=args)

    if args.command == 'export-dot' and args.a == args.b:
        parser.error("arguments -a/--a and -b/--b: the two coordinates must differ")
    if args.command == 'gen' and args.generator == 'grid' and (args.width < 2 or args.height < 2):
        parser.error("arguments --width/--height: the grid needs at least 2 x 2 vertices")
    if getattr(args, 'require_complete', False) and getattr(args, 'budget', None) is not None:
        parser.error("argument -budget/--budget: not allowed together with --require-complete")

    return args
