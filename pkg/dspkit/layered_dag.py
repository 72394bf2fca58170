# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import heapq
import logging
from collections import Counter, deque
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from .constants import LOGGER_NAME
from .graph_core import Graph, Path, PositionTable, UNREACHABLE
from .utils import BadRequestError, CyclicGraphError


logger = logging.getLogger(LOGGER_NAME)


def kahn_order(n: int, arcs: Sequence[Sequence[int]]) -> Optional[List[int]]:
    """
    Topological order preferring small vertex ids, or None if the arcs contain a cycle.
    """
    indegree = [0] * n
    for v in range(n):
        for w in arcs[v]:
            indegree[w] += 1
    heap = [v for v in range(n) if indegree[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in arcs[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == n else None


class Dag(object):
    """
    Directed acyclic graph with a fixed topological order. When `pair_arcs` is
    given, terminal pair i may only travel along pair_arcs[i]; the union of all
    pair arc sets must be acyclic.
    """
    def __init__(self, n: int, arcs: Optional[Sequence[Sequence[int]]] = None,
                 topo_order: Optional[Sequence[int]] = None,
                 pair_arcs: Optional[Sequence[Sequence[Sequence[int]]]] = None):
        if arcs is None and pair_arcs is None:
            raise BadRequestError("a Dag needs arcs or per-pair arcs")
        if pair_arcs is not None:
            self.pair_arcs: Optional[Tuple[Tuple[Tuple[int, ...], ...], ...]] = tuple(
                tuple(tuple(sorted(set(out))) for out in pa) for pa in pair_arcs)
            union = [set() for _ in range(n)]
            for pa in self.pair_arcs:
                for v in range(n):
                    union[v].update(pa[v])
            arcs = union
        else:
            self.pair_arcs = None
        self.n: int = n
        self.arcs: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(set(out))) for out in arcs)
        if topo_order is None:
            topo_order = kahn_order(n, self.arcs)
            if topo_order is None:
                raise CyclicGraphError("arcs contain a directed cycle")
        self.topo_order: Tuple[int, ...] = tuple(topo_order)
        self.rank: List[int] = [0] * n
        for r, v in enumerate(self.topo_order):
            self.rank[v] = r
        for v in range(n):
            for w in self.arcs[v]:
                if self.rank[w] <= self.rank[v]:
                    raise CyclicGraphError("arc {0}->{1} goes against the topological order".format(v, w))

    def successors(self, v: int, pair_index: Optional[int] = None) -> Tuple[int, ...]:
        if self.pair_arcs is not None and pair_index is not None:
            return self.pair_arcs[pair_index][v]
        return self.arcs[v]

    def has_arc(self, v: int, w: int, pair_index: Optional[int] = None) -> bool:
        return w in self.successors(v, pair_index)

    @property
    def arc_count(self) -> int:
        return sum(len(out) for out in self.arcs)

    def __repr__(self):
        return "{0}(n={1}, arcs={2})".format(type(self).__name__, self.n, self.arc_count)


class LayeredDag(Dag):
    """
    D(G, c): every edge of G oriented toward the endpoint one farther from s_c;
    edges inside one layer are dropped.
    """
    def __init__(self, n: int, color: int, arcs: Sequence[Sequence[int]], topo_order: Sequence[int]):
        super().__init__(n, arcs, topo_order)
        self.color: int = color


class DagDisjointInstance(NamedTuple):
    dag: Dag
    pairs: Tuple[Tuple[int, int], ...]


def build_layered_dag(graph: Graph, positions: PositionTable, c: int) -> LayeredDag:
    pos = [positions[v][c] for v in range(graph.n)]
    arcs = []
    for u in range(graph.n):
        pu = pos[u]
        if pu is UNREACHABLE:
            arcs.append(())
            continue
        arcs.append(tuple(w for w in graph.adjacency[u] if pos[w] is not UNREACHABLE and pos[w] - pu == 1))
    # Unreachable vertices carry no arcs and go last.
    topo_order = sorted(range(graph.n), key=lambda v: (pos[v] is UNREACHABLE, pos[v] or 0, v))
    dag = LayeredDag(graph.n, c, arcs, topo_order)
    logger.debug("Built layered DAG for coordinate {0}: {1}".format(c, dag))
    return dag


def _trivial_paths(dag: Dag, pairs: Sequence[Tuple[int, int]]) -> Tuple[List[Optional[Path]], List[int]]:
    """
    Pairs joined by an arc need no interior vertex and are settled up front.
    """
    paths: List[Optional[Path]] = [None] * len(pairs)
    active = []
    for i, (s, t) in enumerate(pairs):
        if s == t:
            paths[i] = (s,)
        elif dag.has_arc(s, t, i):
            paths[i] = (s, t)
        else:
            active.append(i)
    return paths, active


def _reconstruct(parent: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], int]]],
                 goal: Tuple[int, ...]) -> List[List[int]]:
    walks = [[x] for x in goal]
    state = goal
    while parent[state] is not None:
        prev, moved = parent[state]
        walks[moved].append(prev[moved])
        state = prev
    return [list(reversed(w)) for w in walks]


def disjoint_paths_dag(inst: DagDisjointInstance, blocked: FrozenSet[int] = frozenset(),
                       stats: Optional[Counter] = None) -> Optional[List[Path]]:
    """
    p internally vertex-disjoint paths s_i -> t_i in a DAG, or None.

    Forward search over frontier tuples (x_1, ..., x_p). A step always advances
    the unfinished frontier that comes first in topological order, so a vertex
    left behind can never be entered again by another path, and the interior
    vertices of all paths stay pairwise distinct and outside the terminal set.
    Only reachable tuples are stored. `blocked` vertices may not be interior.
    The number of stored tuples is added to stats["frontier_states"].
    """
    dag, pairs = inst.dag, list(inst.pairs)
    if not pairs:
        raise BadRequestError("disjoint_paths_dag needs at least one pair")
    rank = dag.rank
    for s, t in pairs:
        if rank[s] > rank[t]:
            return None

    paths, active = _trivial_paths(dag, pairs)
    if not active:
        return paths
    if len(active) >= dag.n:
        return None

    forbidden = frozenset(v for pair in pairs for v in pair) | blocked
    start = tuple(pairs[i][0] for i in active)
    goal = tuple(pairs[i][1] for i in active)
    goal_rank = [rank[t] for t in goal]
    q = len(active)
    parent: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], int]]] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            if stats is not None:
                stats["frontier_states"] += len(parent)
            for i, walk in zip(active, _reconstruct(parent, goal)):
                paths[i] = tuple(walk)
            return paths
        lead = min((j for j in range(q) if state[j] != goal[j]), key=lambda j: (rank[state[j]], j))
        target = goal[lead]
        for w in dag.successors(state[lead], active[lead]):
            if w != target:
                if w in forbidden or w in state or rank[w] >= goal_rank[lead]:
                    continue
            nxt = state[:lead] + (w,) + state[lead + 1:]
            if nxt not in parent:
                parent[nxt] = (state, lead)
                queue.append(nxt)
    if stats is not None:
        stats["frontier_states"] += len(parent)
    return None


def two_disjoint_paths_dag_fast(dag: Dag, pair1: Tuple[int, int], pair2: Tuple[int, int],
                                blocked: FrozenSet[int] = frozenset()) -> Optional[Tuple[Path, Path]]:
    """
    Two internally vertex-disjoint paths in a DAG, or None. Same frontier rule
    as disjoint_paths_dag, with the pair table packed into integers x1 * n + x2:
    every reachable pair is relaxed once along the out-arcs of its leading
    frontier, O(n * m) in total.
    """
    n, rank = dag.n, dag.rank
    (s1, t1), (s2, t2) = pair1, pair2
    if rank[s1] > rank[t1] or rank[s2] > rank[t2]:
        return None
    paths, active = _trivial_paths(dag, [pair1, pair2])
    if len(active) < 2:
        if not active:
            return paths[0], paths[1]
        single = disjoint_paths_dag(DagDisjointInstance(dag, (pair1, pair2)), blocked)
        return (single[0], single[1]) if single is not None else None

    forbidden = {s1, t1, s2, t2} | set(blocked)
    r_t1, r_t2 = rank[t1], rank[t2]
    start, goal = s1 * n + s2, t1 * n + t2
    parent: Dict[int, int] = {start: -1}
    queue = deque([start])
    while queue:
        code = queue.popleft()
        if code == goal:
            return _unpack_two(parent, goal, n)
        x1, x2 = divmod(code, n)
        if x1 != t1 and (x2 == t2 or (rank[x1], 0) < (rank[x2], 1)):
            for w in dag.successors(x1, 0):
                if w != t1 and (w in forbidden or w == x2 or rank[w] >= r_t1):
                    continue
                nxt = w * n + x2
                if nxt not in parent:
                    parent[nxt] = code
                    queue.append(nxt)
        else:
            for w in dag.successors(x2, 1):
                if w != t2 and (w in forbidden or w == x1 or rank[w] >= r_t2):
                    continue
                nxt = x1 * n + w
                if nxt not in parent:
                    parent[nxt] = code
                    queue.append(nxt)
    return None


def _unpack_two(parent: Dict[int, int], goal: int, n: int) -> Tuple[Path, Path]:
    walk1, walk2 = [], []
    code = goal
    while code != -1:
        x1, x2 = divmod(code, n)
        if not walk1 or walk1[-1] != x1:
            walk1.append(x1)
        if not walk2 or walk2[-1] != x2:
            walk2.append(x2)
        code = parent[code]
    return tuple(reversed(walk1)), tuple(reversed(walk2))
