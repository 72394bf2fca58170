# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
General k-DSP solver.

A solution is searched through guesses of its crossing structure: for every
path i a chain T_i of marble vertices running from s_i to t_i, and for every
permutation sigma of two or more pair indices the pair E(sigma) of marbles on
the path of the last index of sigma where the paths named by sigma cross, or
None. Between two consecutive marbles a path runs inside the layered DAG of
the smallest color its segment carries, and all segments of one color are
solved together by the DAG dynamic program. Every assembled candidate is
verified before it is returned.

Pair indices and colors are 0-based throughout; a color is the index of the
pair whose source defines the coordinate.
"""

import logging
from enum import Enum
from itertools import islice, permutations, product
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import jsonpickle

from .constants import LOGGER_NAME
from .geometry import CrossingSide, Point, colored_in, crossing_vertices, delta_candidates
from .graph_core import DistanceOracle, Graph, Instance, Path, PositionTable, Solution, UNREACHABLE, \
    between, compute_positions, terminals_reachable, verify_solution
from .layered_dag import DagDisjointInstance, LayeredDag, build_layered_dag, disjoint_paths_dag
from .solver_config import SolverConfig
from .utils import BadRequestError, InvalidGuessError, PhaseTimer


logger = logging.getLogger(LOGGER_NAME)

PermKey = Tuple[int, ...]
EndPair = Optional[Tuple[int, int]]

# Color orders tried when per-color results collide on a shared vertex.
_MAX_REPAIR_ORDERS = 24
# DAG results kept across guesses before the cache is dropped.
_MEMO_LIMIT = 200000


class CrossingGuess(object):
    """
    marble_paths[i] is T_i in increasing coordinate i, from s_i to t_i.
    ends maps every permutation to its segment endpoints on T of its last
    index (first endpoint first along the path), or None.
    """
    def __init__(self, marble_paths: Sequence[Sequence[int]], ends: Dict[PermKey, EndPair]):
        self.marble_paths: Tuple[Tuple[int, ...], ...] = tuple(tuple(t) for t in marble_paths)
        self.ends: Dict[PermKey, EndPair] = dict(ends)

    @property
    def k(self) -> int:
        return len(self.marble_paths)

    def marbles(self) -> FrozenSet[int]:
        return frozenset(v for chain in self.marble_paths for v in chain)

    def crossing_keys(self) -> List[PermKey]:
        return sorted((sigma for sigma, pair in self.ends.items() if len(sigma) > 1 and pair is not None),
                      key=lambda sigma: (len(sigma), sigma))

    def trace(self) -> Dict[str, Optional[List[int]]]:
        """
        The E map with 1-based pair labels, e.g. {"1,2": [4, 9], "2,1": None}.
        """
        keys = sorted(self.ends, key=lambda sigma: (len(sigma), sigma))
        return {",".join(str(c + 1) for c in sigma): (list(self.ends[sigma]) if self.ends[sigma] else None)
                for sigma in keys}

    def _key(self):
        return self.marble_paths, tuple(sorted(self.ends.items()))

    def __eq__(self, other):
        return isinstance(other, CrossingGuess) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "CrossingGuess(marbles={0}, crossings={1})".format(
            [list(t) for t in self.marble_paths], {k: self.ends[k] for k in self.crossing_keys()})


class Segment(NamedTuple):
    """
    Two consecutive marbles of T_host with start before end on the path.
    """
    host: int
    start: int
    end: int
    marks: FrozenSet[int]

    @property
    def color(self) -> int:
        return min(self.marks)


class ColorInstance(NamedTuple):
    color: int
    dag_instance: DagDisjointInstance
    segments: Tuple[Segment, ...]


class _Option(NamedTuple):
    ends: Tuple[Tuple[PermKey, EndPair], ...]
    marbles: Tuple[Tuple[int, int], ...]


class _GuessState(object):
    __slots__ = ("marbles", "owner", "ends")

    def __init__(self, marbles: List[Dict[int, int]], owner: Dict[int, int], ends: Dict[PermKey, EndPair]):
        self.marbles = marbles
        self.owner = owner
        self.ends = ends

    def copy(self) -> "_GuessState":
        return _GuessState([dict(chain) for chain in self.marbles], dict(self.owner), dict(self.ends))

    def to_guess(self) -> CrossingGuess:
        return CrossingGuess([tuple(chain[p] for p in sorted(chain)) for chain in self.marbles], self.ends)


def _ends_of(side: CrossingSide) -> EndPair:
    return (side.alpha, side.omega) if side.alpha is not None else None


def _subpath(path: Path, u: int, w: int) -> Path:
    return path[path.index(u):path.index(w) + 1]


class _GuessContext(object):
    """
    Per-instance knowledge shared by the enumerator and by the evaluation of
    known paths: slot order, candidate options per slot and marble placement.
    """
    def __init__(self, instance: Instance, positions: PositionTable, distances: DistanceOracle):
        self.instance = instance
        self.graph: Graph = instance.graph
        self.positions = positions
        self.distances = distances
        self.k = instance.k

    def slot_keys(self) -> List[PermKey]:
        """
        Unordered pairs as (i, j) with i < j, then every longer permutation,
        in length-then-lexicographic order.
        """
        keys = [pair for pair in permutations(range(self.k), 2) if pair[0] < pair[1]]
        for h in range(3, self.k + 1):
            keys.extend(permutations(range(self.k), h))
        return keys

    def initial_state(self) -> _GuessState:
        state = _GuessState([dict() for _ in range(self.k)], dict(), dict())
        for i, (s, t) in enumerate(self.instance.terminals):
            for v in (s, t):
                state.marbles[i][self.positions[v][i]] = v
                state.owner[v] = i
            state.ends[(i,)] = (s, t)
        return state

    def place(self, state: _GuessState, host: int, v: int) -> bool:
        pos = self.positions[v][host]
        if pos is UNREACHABLE:
            return False
        owner = state.owner.get(v)
        if owner is not None:
            return owner == host
        chain = state.marbles[host]
        if pos in chain:
            return False
        below = max((p for p in chain if p < pos), default=None)
        above = min((p for p in chain if p > pos), default=None)
        if below is None or above is None:
            return False
        # The chain stays a subsequence of one shortest s-t path.
        if self.distances.dist(chain[below], v) != pos - below or self.distances.dist(v, chain[above]) != above - pos:
            return False
        chain[pos] = v
        state.owner[v] = host
        return True

    def apply(self, state: _GuessState, option: _Option) -> Optional[_GuessState]:
        nxt = state.copy()
        for host, v in option.marbles:
            if not self.place(nxt, host, v):
                return None
        for sigma, pair in option.ends:
            if pair is not None and not all(
                    colored_in(self.positions, self.distances, pair[0], pair[1], c) for c in set(sigma)):
                return None
            nxt.ends[sigma] = pair
        return nxt

    def children(self, state: _GuessState, key: PermKey) -> Iterator[_GuessState]:
        seen = set()
        for option in self.options(state, key):
            fresh = frozenset(m for m in option.marbles if state.owner.get(m[1]) != m[0])
            signature = (option.ends, fresh)
            if signature in seen:
                continue
            seen.add(signature)
            nxt = self.apply(state, option)
            if nxt is not None:
                yield nxt

    # Slot options.

    def options(self, state: _GuessState, key: PermKey) -> List[_Option]:
        if len(key) == 2:
            i, j = key
            sides = self._crossing_sides(state, i, self.instance.terminals[i], i,
                                         j, self.instance.terminals[j], j)
            return [self._pair_option(i, j, x, y) for x, y in sides]
        ranges = self._chain_ranges(state, key)
        if ranges is None:
            return [_Option(((key, None),), ())]
        q_ends, p_ends = ranges
        sides = self._crossing_sides(state, key[-2], q_ends, key[0], key[-1], p_ends, key[-1])
        return [self._chain_option(key, x, y) for x, y in sides]

    def observed_option(self, state: _GuessState, key: PermKey, paths: Sequence[Path]) -> _Option:
        """
        The option of slot `key` realized by known solution paths.
        """
        if len(key) == 2:
            i, j = key
            ends = self.instance.terminals[i] + self.instance.terminals[j]
            if not self._comparable(ends, i, j):
                return self._pair_option(i, j, CrossingSide(), CrossingSide())
            record = crossing_vertices(paths[i], paths[j], i, j, self.positions, self.distances)
            return self._pair_option(i, j, record.p, record.q)
        ranges = self._chain_ranges(state, key)
        if ranges is None:
            return _Option(((key, None),), ())
        q_ends, p_ends = ranges
        q = _subpath(paths[key[-2]], *q_ends)
        p = _subpath(paths[key[-1]], *p_ends)
        record = crossing_vertices(q, p, key[0], key[-1], self.positions, self.distances)
        return self._chain_option(key, record.p, record.q)

    @staticmethod
    def _pair_option(i: int, j: int, x: CrossingSide, y: CrossingSide) -> _Option:
        ends = (((i, j), _ends_of(y)), ((j, i), _ends_of(x)))
        marbles = tuple((i, v) for v in x if v is not None) + tuple((j, v) for v in y if v is not None)
        return _Option(ends, marbles)

    @staticmethod
    def _chain_option(key: PermKey, x: CrossingSide, y: CrossingSide) -> _Option:
        marbles = tuple((key[-2], v) for v in x if v is not None) + tuple((key[-1], v) for v in y if v is not None)
        return _Option(((key, _ends_of(y)),), marbles)

    def _chain_ranges(self, state: _GuessState, key: PermKey) \
            -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
        """
        For key = (l_1, ..., l_h): the part Q of path l_{h-1} inside both
        E(key[:-1]) and E((l_h, l_{h-1})), and E(key[1:]) on path l_h.
        None when one of them is None or Q is empty.
        """
        first, last = state.ends.get(key[:-1]), state.ends.get(key[1:])
        back = state.ends.get((key[-1], key[-2]))
        if first is None or last is None or back is None:
            return None
        host = key[-2]
        pos = self.positions
        lo = max(first[0], back[0], key=lambda v: pos[v][host])
        hi = min(first[1], back[1], key=lambda v: pos[v][host])
        if pos[lo][host] > pos[hi][host]:
            return None
        return (lo, hi), last

    def _comparable(self, vertices: Sequence[int], a: int, b: int) -> bool:
        return all(self.positions.reachable(v, (a, b)) for v in vertices)

    def _range_vertices(self, state: _GuessState, host: int, x0: int, x1: int) -> List[int]:
        """
        Vertices that may lie on a shortest x0-x1 subpath of path `host`, in path order.
        """
        pos = self.positions
        lo, hi = pos[x0][host], pos[x1][host]
        chain = state.marbles[host]
        found = []
        for v in range(self.graph.n):
            pv = pos[v][host]
            if pv is UNREACHABLE or not lo <= pv <= hi:
                continue
            owner = state.owner.get(v)
            if owner is not None and owner != host:
                continue
            taken = chain.get(pv)
            if taken is not None and taken != v:
                continue
            if between(self.distances, x0, v, x1):
                found.append(v)
        return sorted(found, key=lambda v: (pos[v][host], v))

    def _crossing_sides(self, state: _GuessState,
                        x_host: int, x_ends: Tuple[int, int], a: int,
                        y_host: int, y_ends: Tuple[int, int], b: int) -> List[Tuple[CrossingSide, CrossingSide]]:
        """
        Candidate crossing records of an a-colored subpath X of path x_host and
        a b-colored subpath Y of path y_host in the (a,b) projection: the empty
        record first, then delta vertices, then crossings inside an edge pair,
        then crossings through common lattice points.
        """
        sides = [(CrossingSide(), CrossingSide())]
        if not self._comparable(tuple(x_ends) + tuple(y_ends), a, b):
            return sides
        xs = self._range_vertices(state, x_host, *x_ends)
        ys = self._range_vertices(state, y_host, *y_ends)
        x_set, y_set = set(xs), set(ys)

        dx = [v for v in delta_candidates(x_ends, y_ends, a, b, self.positions, self.distances) if v in x_set]
        dy = [v for v in delta_candidates(y_ends, x_ends, b, a, self.positions, self.distances) if v in y_set]
        for d_x, d_y in product([None] + dx, [None] + dy):
            if d_x is not None or d_y is not None:
                sides.append((CrossingSide(delta=d_x), CrossingSide(delta=d_y)))

        sides.extend(self._fractional_sides(x_host, xs, y_host, ys, a, b))
        sides.extend(self._integer_sides(x_host, xs, x_ends, y_host, ys, y_ends, a, b))
        return sides

    def _proj(self, v: int, a: int, b: int) -> Point:
        return self.positions[v][a], self.positions[v][b]

    def _steps(self, host: int, cands: List[int], a: int, b: int) -> Dict[Point, List[Tuple[int, int]]]:
        """
        Edges that advance path `host` by one, keyed by their doubled projected midpoint.
        """
        pos = self.positions
        cand_set = set(cands)
        steps: Dict[Point, List[Tuple[int, int]]] = dict()
        for u in cands:
            for w in self.graph.adjacency[u]:
                if w in cand_set and pos[w][host] == pos[u][host] + 1:
                    mid = (pos[u][a] + pos[w][a], pos[u][b] + pos[w][b])
                    steps.setdefault(mid, []).append((u, w))
        return steps

    def _fractional_sides(self, x_host, xs, y_host, ys, a, b) -> List[Tuple[CrossingSide, CrossingSide]]:
        x_steps = self._steps(x_host, xs, a, b)
        y_steps = self._steps(y_host, ys, a, b)
        sides = []
        for mid in sorted(x_steps):
            for (u, w), (u2, w2) in product(x_steps[mid], y_steps.get(mid, ())):
                # Four distinct corners, otherwise the paths meet in a lattice point.
                if {self._proj(u, a, b), self._proj(w, a, b)} & {self._proj(u2, a, b), self._proj(w2, a, b)}:
                    continue
                sides.append((CrossingSide(partial=u, varpi=w), CrossingSide(partial=u2, varpi=w2)))
        return sides

    def _neighbors_on(self, host: int, v: int, step: int, cand_set) -> List[int]:
        pv = self.positions[v][host]
        return [u for u in self.graph.adjacency[v] if u in cand_set and self.positions[u][host] == pv + step]

    def _colored_all(self, u: int, w: int, colors: Sequence[int]) -> bool:
        return all(colored_in(self.positions, self.distances, u, w, c) for c in colors)

    def _integer_sides(self, x_host, xs, x_ends, y_host, ys, y_ends, a, b) \
            -> List[Tuple[CrossingSide, CrossingSide]]:
        pos = self.positions
        x_set, y_set = set(xs), set(ys)
        by_proj: Dict[Point, List[int]] = dict()
        for v in ys:
            by_proj.setdefault(self._proj(v, a, b), []).append(v)

        sides = []
        for n1, ax in enumerate(xs):
            for wx in xs[n1:]:
                if wx != ax and pos[wx][x_host] == pos[ax][x_host]:
                    continue
                if not self._colored_all(ax, wx, (x_host, a, b)):
                    continue
                corners = {self._proj(ax, a, b), self._proj(wx, a, b)}
                ends_y = [v for c in sorted(corners) for v in by_proj.get(c, ())]
                for ay, wy in product(ends_y, ends_y):
                    if pos[wy][y_host] < pos[ay][y_host] or (ay == wy) != (ax == wx):
                        continue
                    if {self._proj(ay, a, b), self._proj(wy, a, b)} != corners:
                        continue
                    if not self._colored_all(ay, wy, (y_host, a, b)):
                        continue
                    before_x = [None] if ax == x_ends[0] else self._neighbors_on(x_host, ax, -1, x_set)
                    after_x = [None] if wx == x_ends[1] else self._neighbors_on(x_host, wx, 1, x_set)
                    before_y = [None] if ay == y_ends[0] else self._neighbors_on(y_host, ay, -1, y_set)
                    after_y = [None] if wy == y_ends[1] else self._neighbors_on(y_host, wy, 1, y_set)
                    for px, vx, py, vy in product(before_x, after_x, before_y, after_y):
                        sides.append((CrossingSide(alpha=ax, omega=wx, partial=px, varpi=vx),
                                      CrossingSide(alpha=ay, omega=wy, partial=py, varpi=vy)))
        return sides


class GuessEnumerator(object):
    """
    Lazy depth-first stream of crossing guesses, one slot per permutation.
    The first guess is the trivial one in which no two paths cross. `complete`
    turns True once the stream ran out without hitting the budget.
    """
    def __init__(self, instance: Instance, positions: Optional[PositionTable] = None,
                 distances: Optional[DistanceOracle] = None, budget: Optional[int] = None):
        positions = compute_positions(instance) if positions is None else positions
        distances = DistanceOracle(instance.graph) if distances is None else distances
        self._ctx = _GuessContext(instance, positions, distances)
        self.budget: Optional[int] = budget
        self.emitted: int = 0
        self.complete: bool = False

    def __iter__(self) -> Iterator[CrossingGuess]:
        ctx = self._ctx
        keys = ctx.slot_keys()
        stack: List[Iterator[_GuessState]] = [iter((ctx.initial_state(),))]
        while stack:
            state = next(stack[-1], None)
            if state is None:
                stack.pop()
                continue
            depth = len(stack) - 1
            if depth < len(keys):
                stack.append(ctx.children(state, keys[depth]))
                continue
            if self.budget is not None and self.emitted >= self.budget:
                logger.info("kdsp: guess budget of {0} exhausted".format(self.budget))
                return
            self.emitted += 1
            yield state.to_guess()
        self.complete = True


def enumerate_crossing_guesses(instance: Instance, budget: Optional[int] = None,
                               positions: Optional[PositionTable] = None) -> GuessEnumerator:
    return GuessEnumerator(instance, positions, budget=budget)


def derive_crossing_guess(instance: Instance, paths: Sequence[Path],
                          positions: Optional[PositionTable] = None) -> CrossingGuess:
    """
    The crossing guess realized by a known solution.
    """
    positions = compute_positions(instance) if positions is None else positions
    verdict = verify_solution(instance, Solution(tuple(tuple(p) for p in paths)), positions)
    if not verdict.ok:
        raise BadRequestError("derive_crossing_guess needs a solution: {0}".format(verdict.violation))
    ctx = _GuessContext(instance, positions, DistanceOracle(instance.graph))
    state = ctx.initial_state()
    for key in ctx.slot_keys():
        nxt = ctx.apply(state, ctx.observed_option(state, key, paths))
        if nxt is None:
            raise InvalidGuessError("crossing record of {0} does not fit the marble paths".format(key))
        state = nxt
    return state.to_guess()


def _within(positions: PositionTable, host: int, pair: Tuple[int, int], u: int, w: int) -> bool:
    return positions[pair[0]][host] <= positions[u][host] and positions[w][host] <= positions[pair[1]][host]


def _covering_keys(guess: CrossingGuess, positions: PositionTable, host: int, u: int, w: int) -> List[PermKey]:
    return [sigma for sigma, pair in guess.ends.items()
            if sigma[-1] == host and pair is not None and _within(positions, host, pair, u, w)]


def labels_of(guess: CrossingGuess, segment: Segment, positions: PositionTable) -> FrozenSet[int]:
    """
    First indices of the permutations whose segment contains `segment`.
    """
    return frozenset(sigma[0] for sigma in _covering_keys(guess, positions, segment.host, segment.start, segment.end))


def derive_segments_and_marks(guess: CrossingGuess, positions: PositionTable,
                              distances: DistanceOracle) -> List[Segment]:
    """
    Minimal segments of all marble paths whose ends are at least two apart;
    shorter ones are single edges. The marks of a segment are the indices of
    every permutation whose segment contains it.
    """
    segments = []
    for i, chain in enumerate(guess.marble_paths):
        for u, w in zip(chain, chain[1:]):
            if positions[w][i] - positions[u][i] < 2:
                continue
            marks = frozenset(c for sigma in _covering_keys(guess, positions, i, u, w) for c in sigma)
            for c in marks:
                if not colored_in(positions, distances, u, w, c):
                    raise InvalidGuessError("segment {0}..{1} of path {2} is not {3}-colored".format(u, w, i + 1, c))
            segments.append(Segment(i, u, w, marks))
    return segments


def assemble_color_instances(guess: CrossingGuess, segments: Sequence[Segment], graph: Graph,
                             positions: PositionTable, dags: Optional[Dict[int, LayeredDag]] = None) \
        -> List[ColorInstance]:
    """
    One DAG disjoint-paths instance per color that owns a segment. Each segment
    is oriented by increasing coordinate of its color, and the pairs are
    ordered by the coordinate of their first vertex.
    """
    dags = dict() if dags is None else dags
    grouped: Dict[int, List[Tuple[Tuple[int, int], Segment]]] = dict()
    for seg in segments:
        j = seg.color
        if positions[seg.start][j] <= positions[seg.end][j]:
            pair = (seg.start, seg.end)
        else:
            pair = (seg.end, seg.start)
        grouped.setdefault(j, []).append((pair, seg))

    instances = []
    for j in sorted(grouped):
        if j not in dags:
            dags[j] = build_layered_dag(graph, positions, j)
        entries = sorted(grouped[j], key=lambda e: (positions[e[0][0]][j], e[0][0]))
        pairs = tuple(pair for pair, _ in entries)
        instances.append(ColorInstance(j, DagDisjointInstance(dags[j], pairs), tuple(seg for _, seg in entries)))
    return instances


class GuessEvaluator(object):
    """
    Turns guesses into verified solutions. Distance rows, layered DAGs and DAG
    results are cached across the guesses of one instance.
    """
    def __init__(self, instance: Instance, positions: Optional[PositionTable] = None,
                 timer: Optional[PhaseTimer] = None):
        self.instance = instance
        self.positions = compute_positions(instance) if positions is None else positions
        self.distances = DistanceOracle(instance.graph)
        self.timer = timer
        self._dags: Dict[int, LayeredDag] = dict()
        self._memo: Dict[tuple, Optional[List[Path]]] = dict()

    def _links_present(self, guess: CrossingGuess) -> bool:
        graph = self.instance.graph
        for i, chain in enumerate(guess.marble_paths):
            for u, w in zip(chain, chain[1:]):
                if self.positions[w][i] - self.positions[u][i] == 1 and not graph.has_edge(u, w):
                    return False
        return True

    def _solve_color(self, ci: ColorInstance, blocked: FrozenSet[int]) -> Optional[List[Path]]:
        key = (ci.color, ci.dag_instance.pairs, blocked)
        if key not in self._memo:
            if len(self._memo) >= _MEMO_LIMIT:
                self._memo.clear()
            if self.timer is None:
                self._memo[key] = disjoint_paths_dag(ci.dag_instance, blocked)
            else:
                with self.timer.phase("dag_dp"):
                    self._memo[key] = disjoint_paths_dag(ci.dag_instance, blocked)
        return self._memo[key]

    @staticmethod
    def _concatenate(guess: CrossingGuess, pieces: Dict[Tuple[int, int, int], Path]) -> Solution:
        paths = []
        for i, chain in enumerate(guess.marble_paths):
            walk = [chain[0]]
            for u, w in zip(chain, chain[1:]):
                piece = pieces.get((i, u, w))
                if piece is None:
                    walk.append(w)
                    continue
                if piece[0] != u:
                    piece = piece[::-1]
                walk.extend(piece[1:])
            paths.append(tuple(walk))
        return Solution(tuple(paths))

    def _repair(self, guess: CrossingGuess, color_instances: List[ColorInstance],
                blocked: FrozenSet[int]) -> Optional[Solution]:
        """
        Solve the colors one after another, each avoiding the interiors chosen before.
        """
        for order in islice(permutations(range(len(color_instances))), _MAX_REPAIR_ORDERS):
            used = set(blocked)
            pieces = dict()
            for idx in order:
                ci = color_instances[idx]
                paths = disjoint_paths_dag(ci.dag_instance, frozenset(used))
                if paths is None:
                    break
                for seg, path in zip(ci.segments, paths):
                    pieces[(seg.host, seg.start, seg.end)] = path
                    used.update(path[1:-1])
            else:
                candidate = self._concatenate(guess, pieces)
                if verify_solution(self.instance, candidate, self.positions).ok:
                    logger.debug("kdsp: colors resolved in order {0}".format(order))
                    return candidate
        return None

    def solve(self, guess: CrossingGuess) -> Optional[Solution]:
        if not self._links_present(guess):
            return None
        segments = derive_segments_and_marks(guess, self.positions, self.distances)
        color_instances = assemble_color_instances(
            guess, segments, self.instance.graph, self.positions, self._dags)
        blocked = guess.marbles()
        pieces: Dict[Tuple[int, int, int], Path] = dict()
        for ci in color_instances:
            paths = self._solve_color(ci, blocked)
            if paths is None:
                return None
            for seg, path in zip(ci.segments, paths):
                pieces[(seg.host, seg.start, seg.end)] = path
        candidate = self._concatenate(guess, pieces)
        if verify_solution(self.instance, candidate, self.positions).ok:
            return candidate
        if len(color_instances) > 1:
            return self._repair(guess, color_instances, blocked)
        return None


class SolveOutcome(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class KdspResult(object):
    def __init__(self, outcome: SolveOutcome, solution: Optional[Solution] = None, guesses_tried: int = 0,
                 complete: bool = False, winning_guess: Optional[CrossingGuess] = None):
        self.outcome: SolveOutcome = outcome
        self.solution: Optional[Solution] = solution
        self.guesses_tried: int = guesses_tried
        self.complete: bool = complete
        self.winning_guess: Optional[CrossingGuess] = winning_guess

    def serialize_json(self) -> str:
        return jsonpickle.encode(self)

    def __repr__(self):
        return "{0}({1})".format(type(self).__name__, str(self.__dict__))


class KdspSolver(object):
    def __init__(self, instance: Instance, config: Optional[SolverConfig] = None, log_event_queue=None,
                 timer: Optional[PhaseTimer] = None):
        if instance.k < 1:
            raise BadRequestError("k-DSP needs at least one terminal pair")
        self.instance = instance
        self.config = SolverConfig() if config is None else config
        self.log_event_queue = log_event_queue
        self.timer = timer

    def _evaluate(self, positions: PositionTable, guesses: GuessEnumerator) \
            -> Tuple[int, Optional[CrossingGuess], Optional[Solution]]:
        if self.config.threads > 1:
            from .guess_processor import evaluate_guesses_parallel
            return evaluate_guesses_parallel(
                self.instance, positions, guesses, self.config.threads, self.config.chunk_size,
                self.log_event_queue)
        evaluator = GuessEvaluator(self.instance, positions, self.timer)
        tried = 0
        for guess in guesses:
            tried += 1
            solution = evaluator.solve(guess)
            if solution is not None:
                return tried, guess, solution
        return tried, None, None

    def solve(self) -> KdspResult:
        positions = compute_positions(self.instance)
        if not terminals_reachable(self.instance, positions):
            logger.info("kdsp: a terminal pair is disconnected")
            return KdspResult(SolveOutcome.NO, complete=True)
        budget = None if self.config.require_complete else self.config.guess_budget
        guesses = GuessEnumerator(self.instance, positions, budget=budget)
        tried, guess, solution = self._evaluate(positions, guesses)
        if solution is not None:
            result = KdspResult(SolveOutcome.YES, solution, tried, guesses.complete, guess)
        elif guesses.complete:
            result = KdspResult(SolveOutcome.NO, None, tried, True)
        else:
            result = KdspResult(SolveOutcome.UNKNOWN, None, tried, False)
        logger.info("kdsp: {0} after {1} guesses (k={2}, n={3}, complete={4})".format(
            result.outcome.value, tried, self.instance.k, self.instance.n, guesses.complete))
        return result


def solve_kdsp(instance: Instance, config: Optional[SolverConfig] = None) -> KdspResult:
    return KdspSolver(instance, config).solve()
