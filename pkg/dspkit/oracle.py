# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import logging
import time
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Set

from .constants import LOGGER_NAME
from .graph_core import Graph, Instance, Path, Solution, UNREACHABLE, bfs_distances, compute_positions, \
    terminals_reachable, verify_solution
from .solver_config import EnumLimits
from .utils import InvalidInstanceError


logger = logging.getLogger(LOGGER_NAME)

# How many search steps pass between two wall clock checks.
_CLOCK_STRIDE = 1024


class OracleOutcome(Enum):
    YES = "yes"
    NO = "no"
    LIMIT = "limit"


class OracleResult(NamedTuple):
    outcome: OracleOutcome
    solution: Optional[Solution] = None
    tuples_explored: int = 0


def iter_shortest_paths(graph: Graph, s: int, t: int) -> Iterator[Path]:
    """
    All shortest s-t paths in lexicographic vertex id order, walked as
    source-to-sink paths of the distance-layered DAG of s.
    """
    ds = bfs_distances(graph, s)
    if ds[t] is UNREACHABLE:
        return
    dt = bfs_distances(graph, t)
    total = ds[t]

    def forward(v: int):
        return [w for w in graph.adjacency[v]
                if ds[w] == ds[v] + 1 and dt[w] is not UNREACHABLE and ds[w] + dt[w] == total]

    path = [s]
    stack = [iter(forward(s))]
    while stack:
        if path[-1] == t:
            yield tuple(path)
            path.pop()
            stack.pop()
            continue
        w = next(stack[-1], None)
        if w is None:
            path.pop()
            stack.pop()
            continue
        path.append(w)
        stack.append(iter(forward(w)))


def enumerate_shortest_paths(graph: Graph, s: int, t: int, limit: Optional[int] = None) -> List[Path]:
    """
    The shortest s-t paths, at most `limit` of them. Empty when t is not reachable.
    """
    paths = []
    for p in iter_shortest_paths(graph, s, t):
        if limit is not None and len(paths) >= limit:
            break
        paths.append(p)
    return paths


def count_shortest_paths(graph: Graph, s: int, t: int) -> int:
    ds = bfs_distances(graph, s)
    if ds[t] is UNREACHABLE:
        return 0
    order = sorted((v for v in range(graph.n) if ds[v] is not UNREACHABLE and ds[v] <= ds[t]), key=lambda v: ds[v])
    count = [0] * graph.n
    count[s] = 1
    for v in order:
        for w in graph.adjacency[v]:
            if ds[w] == ds[v] + 1:
                count[w] += count[v]
    return count[t]


class _Search(object):
    def __init__(self, limits: EnumLimits):
        self.limits = limits
        self.deadline = time.monotonic() + limits.time_budget
        self.steps = 0
        self.exhausted = False

    def tick(self) -> bool:
        """
        Count one explored tuple; False once a limit is hit.
        """
        self.steps += 1
        if self.steps > self.limits.max_tuples:
            self.exhausted = True
        elif self.steps % _CLOCK_STRIDE == 0 and time.monotonic() > self.deadline:
            self.exhausted = True
        return not self.exhausted


def _candidate_paths(instance: Instance, limits: EnumLimits) -> Optional[List[List[Path]]]:
    candidates = []
    for i, (s, t) in enumerate(instance.terminals):
        count = count_shortest_paths(instance.graph, s, t)
        if count > limits.max_paths:
            logger.info("oracle: pair {0} has {1} shortest paths, above max_paths={2}".format(
                i + 1, count, limits.max_paths))
            return None
        candidates.append(enumerate_shortest_paths(instance.graph, s, t))
    return candidates


def oracle_solve(instance: Instance, limits: Optional[EnumLimits] = None) -> OracleResult:
    """
    Exhaustive backtracking over one shortest path per pair, pairs with the
    fewest alternatives first, pruning on vertex conflicts. NO is returned only
    after the search ran to exhaustion; any truncation yields LIMIT.
    """
    limits = EnumLimits() if limits is None else limits
    positions = compute_positions(instance)
    if not terminals_reachable(instance, positions):
        return OracleResult(OracleOutcome.NO)
    candidates = _candidate_paths(instance, limits)
    if candidates is None:
        return OracleResult(OracleOutcome.LIMIT)

    order = sorted(range(instance.k), key=lambda i: (len(candidates[i]), i))
    # Terminals of other pairs are never usable, so drop those paths up front.
    terminal_set = instance.terminal_set()
    for i in order:
        own = set(instance.terminals[i])
        candidates[i] = [p for p in candidates[i] if not (set(p) & terminal_set) - own]

    search = _Search(limits)
    chosen: Dict[int, Path] = dict()
    used: Set[int] = set()

    def backtrack(depth: int) -> bool:
        if depth == len(order):
            return True
        i = order[depth]
        for path in candidates[i]:
            if not search.tick():
                return False
            if used.isdisjoint(path):
                chosen[i] = path
                used.update(path)
                if backtrack(depth + 1):
                    return True
                used.difference_update(path)
                del chosen[i]
            if search.exhausted:
                return False
        return False

    found = backtrack(0)
    if search.exhausted:
        logger.info("oracle: search stopped after {0} tuples".format(search.steps))
        return OracleResult(OracleOutcome.LIMIT, tuples_explored=search.steps)
    if not found:
        return OracleResult(OracleOutcome.NO, tuples_explored=search.steps)
    solution = Solution(tuple(chosen[i] for i in range(instance.k)))
    verdict = verify_solution(instance, solution, positions)
    if not verdict.ok:
        raise InvalidInstanceError("oracle produced an invalid witness: {0}".format(verdict.violation))
    return OracleResult(OracleOutcome.YES, solution, search.steps)


def oracle_solve_product(instance: Instance, limits: Optional[EnumLimits] = None) -> OracleResult:
    """
    Second ground truth: every tuple of the plain product of the per-pair
    shortest path lists is verified, without any pruning.
    """
    limits = EnumLimits() if limits is None else limits
    positions = compute_positions(instance)
    if not terminals_reachable(instance, positions):
        return OracleResult(OracleOutcome.NO)
    candidates = _candidate_paths(instance, limits)
    if candidates is None:
        return OracleResult(OracleOutcome.LIMIT)
    search = _Search(limits)
    for paths in product(*candidates):
        if not search.tick():
            return OracleResult(OracleOutcome.LIMIT, tuples_explored=search.steps)
        solution = Solution(tuple(paths))
        if verify_solution(instance, solution, positions).ok:
            return OracleResult(OracleOutcome.YES, solution, search.steps)
    return OracleResult(OracleOutcome.NO, tuples_explored=search.steps)
