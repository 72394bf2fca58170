# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Exact solver for two disjoint shortest paths.

Pair 1 travels in coordinate 0 and pair 2 in coordinate 1 of the position
embedding. If a solution exists, the projections of its two paths either miss
each other, cross in one half-integer point, or share a straight run that
contains a lattice point. Each situation is guessed from O(n) candidates and
turned into per-pair arc sets; every candidate answer is verified before it
is returned.
"""

import logging
from collections import Counter, deque
from enum import Enum
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import jsonpickle

from .constants import LOGGER_NAME
from .geometry import Box, Point, box_contains, delta_candidates, rotated_box
from .graph_core import DistanceOracle, Graph, Instance, Path, PositionTable, Solution, UNREACHABLE, \
    compute_positions, terminals_reachable, verify_solution
from .layered_dag import Dag, two_disjoint_paths_dag_fast
from .utils import BadRequestError, CyclicGraphError


logger = logging.getLogger(LOGGER_NAME)

PairArcs = List[List[int]]


class Dsp2Tag(Enum):
    AVOIDING = "avoiding"
    NONCROSSING = "noncrossing"
    FRACTIONAL = "fractional"
    INTEGER = "integer"


class Dsp2Case(NamedTuple):
    """
    One guess of the crossing structure, with the witness fields of its tag:
      NONCROSSING: `carrier` (0-based pair index) and the `delta` point on it.
      FRACTIONAL: `corners` = (p_s1, p_t1, p_s2, p_t2), the lattice points
        around the crossing, the pair i path stepping from p_si to p_ti.
      INTEGER: the `pivot` point, `reversed_second` when the second path is
        searched backwards, and `owners` of the two contested diagonals.
    `swapped` marks the variant with the second pair's terminals exchanged.
    """
    tag: Dsp2Tag
    swapped: bool = False
    carrier: Optional[int] = None
    delta: Optional[Point] = None
    corners: Optional[Tuple[Point, Point, Point, Point]] = None
    pivot: Optional[Point] = None
    reversed_second: bool = False
    owners: Optional[Tuple[int, int]] = None

    def describe(self) -> dict:
        doc = {"tag": self.tag.value, "swapped": self.swapped}
        for field in ("carrier", "delta", "corners", "pivot", "owners"):
            value = getattr(self, field)
            if value is not None:
                doc[field] = value
        if self.tag == Dsp2Tag.INTEGER:
            doc["reversed_second"] = self.reversed_second
        return doc


class Dsp2Stats(object):
    def __init__(self):
        self.attempted: Counter = Counter()
        self.won: Counter = Counter()

    def record_attempt(self, tag: Dsp2Tag):
        self.attempted[tag.value] += 1

    def record_win(self, tag: Dsp2Tag):
        self.won[tag.value] += 1

    def merge(self, other: "Dsp2Stats"):
        self.attempted.update(other.attempted)
        self.won.update(other.won)

    def as_dict(self) -> dict:
        return {"attempted": dict(self.attempted), "won": dict(self.won)}


class Dsp2Result(object):
    def __init__(self, solution: Optional[Solution], case: Optional[Dsp2Case], stats: Dsp2Stats):
        self.solution: Optional[Solution] = solution
        self.case: Optional[Dsp2Case] = case
        self.stats: Dsp2Stats = stats

    @property
    def found(self) -> bool:
        return self.solution is not None

    def serialize_json(self):
        return jsonpickle.encode(self)


def _points(positions: PositionTable) -> List[Optional[Point]]:
    pts = []
    for v in range(positions.n):
        x, y = positions[v][0], positions[v][1]
        pts.append(None if x is UNREACHABLE or y is UNREACHABLE else (x, y))
    return pts


def _bfs_path(arcs: Sequence[Sequence[int]], s: int, t: int, avoid: frozenset = frozenset()) -> Optional[Path]:
    parent: Dict[int, int] = {s: -1}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == t:
            walk = [t]
            while parent[walk[-1]] != -1:
                walk.append(parent[walk[-1]])
            return tuple(reversed(walk))
        for w in arcs[v]:
            if w not in parent and (w == t or w not in avoid):
                parent[w] = v
                queue.append(w)
    return None


def _zone_arcs(graph: Graph, pts: Sequence[Optional[Point]], coord: int, zones: Sequence[Box],
               excluded: Sequence[Tuple[Box, Box]] = (), reverse: bool = False, union: bool = False) -> PairArcs:
    """
    Arcs v->w over edges that raise `coord` by one with both endpoints in a
    common zone, or with `union` in any zones. Edges with both endpoints in
    one of the `excluded` zone intersections are left out.
    """
    n = graph.n
    member = [None] * n
    for v in range(n):
        if pts[v] is not None:
            member[v] = [box_contains(z, pts[v]) for z in zones]

    def in_excluded(v: int, w: int) -> bool:
        for b1, b2 in excluded:
            if box_contains(b1, pts[v]) and box_contains(b2, pts[v]) and \
                    box_contains(b1, pts[w]) and box_contains(b2, pts[w]):
                return True
        return False

    arcs: PairArcs = [[] for _ in range(n)]
    for v in range(n):
        if member[v] is None or not any(member[v]):
            continue
        for w in graph.adjacency[v]:
            if member[w] is None or pts[w][coord] != pts[v][coord] + 1:
                continue
            joined = any(member[w]) if union else any(a and b for a, b in zip(member[v], member[w]))
            if not joined:
                continue
            if excluded and in_excluded(v, w):
                continue
            if reverse:
                arcs[w].append(v)
            else:
                arcs[v].append(w)
    return arcs


def oriented_crossing_arcs(instance: Instance, positions: PositionTable, case: Dsp2Case) -> Tuple[PairArcs, PairArcs]:
    """
    The per-pair arc sets prescribed by a case guess. Every s_i -> t_i walk
    along pair i's arcs is a shortest path of the graph. With
    `case.reversed_second` the arcs of pair 2 point from t_2 back to s_2.
    """
    graph = instance.graph
    pts = _points(positions)
    (s1, t1), (s2, t2) = instance.terminals
    ps1, pt1, ps2, pt2 = pts[s1], pts[t1], pts[s2], pts[t2]
    whole1, whole2 = rotated_box(ps1, pt1), rotated_box(ps2, pt2)

    if case.tag == Dsp2Tag.AVOIDING:
        return _zone_arcs(graph, pts, 0, [whole1]), _zone_arcs(graph, pts, 1, [whole2])

    if case.tag == Dsp2Tag.NONCROSSING:
        d = case.delta
        if case.carrier == 0:
            return _zone_arcs(graph, pts, 0, [rotated_box(ps1, d), rotated_box(d, pt1)]), \
                _zone_arcs(graph, pts, 1, [whole2])
        return _zone_arcs(graph, pts, 0, [whole1]), \
            _zone_arcs(graph, pts, 1, [rotated_box(ps2, d), rotated_box(d, pt2)])

    if case.tag == Dsp2Tag.FRACTIONAL:
        c_s1, c_t1, c_s2, c_t2 = case.corners
        # The crossing edges join the two zones of a pair.
        return _zone_arcs(graph, pts, 0, [rotated_box(ps1, c_s1), rotated_box(c_t1, pt1)], union=True), \
            _zone_arcs(graph, pts, 1, [rotated_box(ps2, c_s2), rotated_box(c_t2, pt2)], union=True)

    p = case.pivot
    a1, b1 = rotated_box(ps1, p), rotated_box(p, pt1)
    a2, b2 = rotated_box(ps2, p), rotated_box(p, pt2)
    # The two contested regions: anti-diagonals through the pivot when both
    # paths run forward, diagonals when the second one runs backwards.
    if case.reversed_second:
        contested = [(a1, a2), (b1, b2)]
    else:
        contested = [(a1, b2), (a2, b1)]
    excluded1 = [r for r, owner in zip(contested, case.owners) if owner != 0]
    excluded2 = [r for r, owner in zip(contested, case.owners) if owner != 1]
    return _zone_arcs(graph, pts, 0, [a1, b1], excluded1), \
        _zone_arcs(graph, pts, 1, [a2, b2], excluded2, reverse=case.reversed_second)


def oriented_crossing_dag(instance: Instance, positions: PositionTable, case: Dsp2Case) -> Optional[Dag]:
    """
    The case's arc sets as one DAG with per-pair arcs, or None when their
    union has a directed cycle (the guess cannot be realized). The areas hang
    off the terminal pairs, so this takes the instance and not just its graph.
    """
    arcs1, arcs2 = oriented_crossing_arcs(instance, positions, case)
    try:
        return Dag(instance.n, pair_arcs=[arcs1, arcs2])
    except CyclicGraphError:
        logger.debug("dsp2: pruned cyclic branch {0}".format(case.describe()))
        return None


class Dsp2Solver(object):
    def __init__(self, instance: Instance, stats: Optional[Dsp2Stats] = None):
        if instance.k != 2:
            raise BadRequestError("the 2-DSP solver needs exactly 2 terminal pairs, got {0}".format(instance.k))
        self.instance = instance
        self.stats = Dsp2Stats() if stats is None else stats

    def solve(self) -> Dsp2Result:
        base = compute_positions(self.instance)
        if not terminals_reachable(self.instance, base):
            logger.info("dsp2: a target is unreachable from its source")
            return Dsp2Result(None, None, self.stats)

        (s1, t1), (s2, t2) = self.instance.terminals
        if base[s1][1] is UNREACHABLE:
            # The pairs live in different components, any two shortest paths will do.
            adjacency = self.instance.graph.adjacency
            case = Dsp2Case(Dsp2Tag.AVOIDING)
            self.stats.record_attempt(case.tag)
            self.stats.record_win(case.tag)
            solution = Solution((_bfs_path(adjacency, s1, t1), _bfs_path(adjacency, s2, t2)))
            return Dsp2Result(solution, case, self.stats)

        variants = [(self.instance, False), (Instance(self.instance.graph, [(s1, t1), (t2, s2)]), True)]
        for instance, swapped in variants:
            positions = base if not swapped else compute_positions(instance)
            found = _VariantSearch(instance, positions, swapped, self.stats).run()
            if found is not None:
                paths, case = found
                if swapped:
                    paths = (paths[0], tuple(reversed(paths[1])))
                solution = Solution(tuple(paths))
                verdict = verify_solution(self.instance, solution, base)
                if verdict.ok:
                    self.stats.record_win(case.tag)
                    logger.info("dsp2: solved by {0}".format(case.describe()))
                    return Dsp2Result(solution, case, self.stats)
                logger.warning("dsp2: rejected an assembled solution: {0}".format(verdict.violation))
        logger.info("dsp2: no solution; cases tried {0}".format(dict(self.stats.attempted)))
        return Dsp2Result(None, None, self.stats)


class _VariantSearch(object):
    """
    All case guesses for one orientation of the terminal pairs. run() returns
    the first pair of paths that verifies, together with its case.
    """
    def __init__(self, instance: Instance, positions: PositionTable, swapped: bool, stats: Dsp2Stats):
        self.instance = instance
        self.positions = positions
        self.swapped = swapped
        self.stats = stats
        self.pts = _points(positions)
        self.distances = DistanceOracle(instance.graph)
        graph = instance.graph
        self.on_pair: List[List[bool]] = []
        for i, (s, t) in enumerate(instance.terminals):
            from_t = self.distances.row(t)
            total = positions[t][i]
            self.on_pair.append([positions[v][i] is not UNREACHABLE and from_t[v] is not UNREACHABLE and
                                 positions[v][i] + from_t[v] == total for v in range(graph.n)])
        self.at_point: Dict[Point, List[int]] = dict()
        for v in range(graph.n):
            if self.pts[v] is not None:
                self.at_point.setdefault(self.pts[v], []).append(v)

    def _case(self, tag: Dsp2Tag, **witness) -> Dsp2Case:
        return Dsp2Case(tag, swapped=self.swapped, **witness)

    def _accept(self, paths: Sequence[Optional[Path]], case: Dsp2Case):
        if any(p is None for p in paths):
            return None
        if verify_solution(self.instance, Solution(tuple(paths)), self.positions).ok:
            return tuple(paths), case
        return None

    def _try_independent(self, case: Dsp2Case):
        self.stats.record_attempt(case.tag)
        arcs1, arcs2 = oriented_crossing_arcs(self.instance, self.positions, case)
        (s1, t1), (s2, t2) = self.instance.terminals
        return self._accept([_bfs_path(arcs1, s1, t1), _bfs_path(arcs2, s2, t2)], case)

    def run(self):
        if not self.swapped:
            found = self._try_independent(self._case(Dsp2Tag.AVOIDING))
            if found is not None:
                return found
        for step in (self._noncrossing, self._fractional, self._integer):
            found = step()
            if found is not None:
                return found
        return None

    def _noncrossing(self):
        (s1, t1), (s2, t2) = self.instance.terminals
        for carrier, ends, q_ends, a, b in ((0, (s1, t1), (s2, t2), 0, 1), (1, (s2, t2), (s1, t1), 1, 0)):
            seen = set()
            for v in delta_candidates(ends, q_ends, a, b, self.positions, self.distances):
                point = self.pts[v]
                if point is None or point in seen:
                    continue
                seen.add(point)
                found = self._try_independent(self._case(Dsp2Tag.NONCROSSING, carrier=carrier, delta=point))
                if found is not None:
                    return found
        return None

    def _has_step(self, pair: int, src: Point, dst: Point) -> bool:
        graph = self.instance.graph
        for u in self.at_point.get(src, ()):
            if not self.on_pair[pair][u]:
                continue
            for w in self.at_point.get(dst, ()):
                if self.on_pair[pair][w] and graph.has_edge(u, w):
                    return True
        return False

    def _fractional(self):
        points = sorted(p for p, vs in self.at_point.items() if any(self.on_pair[0][v] for v in vs))
        for (x, y), d in product(points, (1, -1)):
            c_s1, c_t1 = (x, y), (x + 1, y + d)
            if d == 1:
                c_s2, c_t2 = (x + 1, y), (x, y + 1)
            else:
                c_s2, c_t2 = (x, y - 1), (x + 1, y)
            if not (self._has_step(0, c_s1, c_t1) and self._has_step(1, c_s2, c_t2)):
                continue
            found = self._try_independent(self._case(Dsp2Tag.FRACTIONAL, corners=(c_s1, c_t1, c_s2, c_t2)))
            if found is not None:
                return found
        return None

    def _pivots(self) -> List[Point]:
        pivots = []
        for p, vs in self.at_point.items():
            first = [v for v in vs if self.on_pair[0][v]]
            second = [v for v in vs if self.on_pair[1][v]]
            if any(u != w for u in first for w in second):
                pivots.append(p)
        return sorted(pivots)

    def _integer(self):
        (s1, t1), (s2, t2) = self.instance.terminals
        for pivot in self._pivots():
            for reversed_second, owners in product((False, True), product((0, 1), repeat=2)):
                case = self._case(Dsp2Tag.INTEGER, pivot=pivot, reversed_second=reversed_second, owners=owners)
                self.stats.record_attempt(case.tag)
                dag = oriented_crossing_dag(self.instance, self.positions, case)
                if dag is None:
                    continue
                pair2 = (t2, s2) if reversed_second else (s2, t2)
                paths = two_disjoint_paths_dag_fast(dag, (s1, t1), pair2)
                if paths is None:
                    continue
                p1, p2 = paths
                if reversed_second:
                    p2 = tuple(reversed(p2))
                found = self._accept([p1, p2], case)
                if found is not None:
                    return found
        return None


def solve_dsp2(instance: Instance, stats: Optional[Dsp2Stats] = None) -> Optional[Solution]:
    return Dsp2Solver(instance, stats).solve().solution
