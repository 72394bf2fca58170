# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import logging
from collections import deque
from typing import Dict, IO, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .constants import LOGGER_NAME, DSP_FORMAT_TAG
from .utils import InstanceFormatError, InvalidInstanceError, ascii_text


logger = logging.getLogger(LOGGER_NAME)

# Distance of a vertex that is not connected to the source.
UNREACHABLE = None

Path = Tuple[int, ...]
Distance = Optional[int]


class Graph(object):
    """
    Immutable undirected simple graph over the vertex ids 0..n-1.
    """
    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]):
        if n < 0:
            raise InvalidInstanceError("negative vertex count {0}".format(n))
        neighbor_sets = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInstanceError("edge {0}-{1}: vertex id out of range [0, {2})".format(u, v, n))
            if u == v:
                raise InvalidInstanceError("edge {0}-{1}: self-loop".format(u, v))
            if v in neighbor_sets[u]:
                raise InvalidInstanceError("edge {0}-{1}: duplicate edge".format(u, v))
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.n: int = n
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in neighbor_sets)
        self.m: int = sum(len(s) for s in neighbor_sets) // 2
        self._neighbor_sets = tuple(frozenset(s) for s in neighbor_sets)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield u, v

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return "Graph(n={0}, m={1})".format(self.n, self.m)


class Instance(object):
    """
    A k-DSP instance: a graph plus k terminal pairs, all 2k terminals pairwise distinct.
    """
    def __init__(self, graph: Graph, terminals: Sequence[Tuple[int, int]]):
        if len(terminals) == 0:
            raise InvalidInstanceError("k = 0: at least one terminal pair is required")
        seen: Dict[int, int] = dict()
        for i, (s, t) in enumerate(terminals):
            for v in (s, t):
                if not 0 <= v < graph.n:
                    raise InvalidInstanceError("terminal {0} of pair {1} out of range [0, {2})".format(
                        v, i + 1, graph.n))
            if s == t:
                raise InvalidInstanceError(
                    "pair {0}: terminals within a pair must be distinct, got {1} {2}".format(i + 1, s, t))
            for v in (s, t):
                if v in seen:
                    raise InvalidInstanceError("terminal {0} repeated in pairs {1} and {2}".format(
                        v, seen[v] + 1, i + 1))
                seen[v] = i
        self.graph: Graph = graph
        self.terminals: Tuple[Tuple[int, int], ...] = tuple((int(s), int(t)) for s, t in terminals)

    @property
    def k(self) -> int:
        return len(self.terminals)

    @property
    def n(self) -> int:
        return self.graph.n

    def terminal_set(self) -> frozenset:
        return frozenset(v for pair in self.terminals for v in pair)

    def __eq__(self, other):
        return isinstance(other, Instance) and self.graph == other.graph and self.terminals == other.terminals

    def __hash__(self):
        return hash((self.graph, self.terminals))

    def __repr__(self):
        return "Instance(n={0}, m={1}, k={2})".format(self.graph.n, self.graph.m, self.k)


class PositionTable(object):
    """
    pos[v][i] = dist(s_i, v), UNREACHABLE where v is not connected to s_i.
    """
    def __init__(self, rows: Sequence[Sequence[Distance]]):
        self.pos: Tuple[Tuple[Distance, ...], ...] = tuple(tuple(r) for r in rows)
        self.n: int = len(self.pos)
        self.k: int = len(self.pos[0]) if self.pos else 0

    def __getitem__(self, v: int) -> Tuple[Distance, ...]:
        return self.pos[v]

    def coord(self, v: int, i: int) -> Distance:
        return self.pos[v][i]

    def project(self, v: int, coords: Sequence[int]) -> Tuple[Distance, ...]:
        p = self.pos[v]
        return tuple(p[c] for c in coords)

    def reachable(self, v: int, coords: Optional[Sequence[int]] = None) -> bool:
        p = self.pos[v]
        coords = range(self.k) if coords is None else coords
        return all(p[c] is not UNREACHABLE for c in coords)


class Solution(NamedTuple):
    paths: Tuple[Path, ...]


class Verdict(NamedTuple):
    ok: bool
    violation: Optional[str] = None


def bfs_distances(graph: Graph, source: int) -> List[Distance]:
    if not 0 <= source < graph.n:
        raise InvalidInstanceError("source {0} out of range [0, {1})".format(source, graph.n))
    dist: List[Distance] = [UNREACHABLE] * graph.n
    dist[source] = 0
    queue = deque([source])
    adjacency = graph.adjacency
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adjacency[v]:
            if dist[w] is UNREACHABLE:
                dist[w] = dv
                queue.append(w)
    return dist


def compute_positions(instance: Instance) -> PositionTable:
    columns = [bfs_distances(instance.graph, s) for s, _ in instance.terminals]
    rows = [tuple(col[v] for col in columns) for v in range(instance.n)]
    return PositionTable(rows)


def terminals_reachable(instance: Instance, positions: PositionTable) -> bool:
    return all(positions[t][i] is not UNREACHABLE for i, (_, t) in enumerate(instance.terminals))


class DistanceOracle(object):
    """
    Per-call cache of BFS rows, filled on demand.
    """
    def __init__(self, graph: Graph):
        self.graph = graph
        self._rows: Dict[int, List[Distance]] = dict()

    def row(self, u: int) -> List[Distance]:
        r = self._rows.get(u)
        if r is None:
            r = bfs_distances(self.graph, u)
            self._rows[u] = r
        return r

    def dist(self, u: int, v: int) -> Distance:
        return self.row(u)[v]


def between(distances: DistanceOracle, u: int, v: int, w: int) -> bool:
    """
    Whether v lies on some shortest u-w path.
    """
    row_u = distances.row(u)
    duv, duw = row_u[v], row_u[w]
    if duv is UNREACHABLE or duw is UNREACHABLE:
        return False
    dvw = distances.dist(v, w)
    return dvw is not UNREACHABLE and duv + dvw == duw


def verify_solution(instance: Instance, candidate: Solution,
                    positions: Optional[PositionTable] = None) -> Verdict:
    if positions is None:
        positions = compute_positions(instance)
    graph = instance.graph
    if len(candidate.paths) != instance.k:
        return Verdict(False, "expected {0} paths, got {1}".format(instance.k, len(candidate.paths)))

    owner: Dict[int, int] = dict()
    for i, path in enumerate(candidate.paths):
        s, t = instance.terminals[i]
        label = i + 1
        if len(path) == 0:
            return Verdict(False, "endpoints: path {0} is empty".format(label))
        if path[0] != s or path[-1] != t:
            return Verdict(False, "endpoints: path {0} runs {1}->{2}, expected {3}->{4}".format(
                label, path[0], path[-1], s, t))
        for v in path:
            if not 0 <= v < graph.n:
                return Verdict(False, "vertex {0} of path {1} out of range".format(v, label))
        for u, v in zip(path, path[1:]):
            if not graph.has_edge(u, v):
                return Verdict(False, "adjacency: path {0} uses non-edge {1}-{2}".format(label, u, v))
        dist = positions[t][i]
        if dist is UNREACHABLE or len(path) - 1 != dist:
            return Verdict(False, "not shortest: path {0} has length {1}, dist(s_{0},t_{0}) = {2}".format(
                label, len(path) - 1, dist))
        for v in path:
            if v in owner:
                if owner[v] == i:
                    return Verdict(False, "repeated vertex: path {0} visits {1} twice".format(label, v))
                return Verdict(False, "disjointness: vertex {0} is shared by paths {1} and {2}".format(
                    v, owner[v] + 1, label))
            owner[v] = i
    return Verdict(True)


def _read_source(text: Union[str, bytes, IO]) -> str:
    if hasattr(text, "read"):
        text = text.read()
    return ascii_text(text)


def _parse_ints(tokens: Sequence[str], count: int, line_number: int, what: str) -> List[int]:
    if len(tokens) != count:
        raise InstanceFormatError("{0} line needs {1} fields, got {2}".format(what, count, len(tokens)), line_number)
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError("{0} line has a non-integer field".format(what), line_number)
    return values


def parse_instance(text: Union[str, bytes, IO]) -> Instance:
    """
    Parse the DSP text format:
      c <comment>
      p dsp <n> <m> <k>
      e <u> <v>      (m lines)
      t <s> <t>      (k lines)
    """
    header = None
    edges: List[Tuple[int, int]] = []
    terminals: List[Tuple[int, int]] = []
    seen_edges = set()
    last_line = 0
    for line_number, raw in enumerate(_read_source(text).splitlines(), start=1):
        last_line = line_number
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if header is not None:
                raise InstanceFormatError("duplicate header", line_number)
            if len(tokens) != 5 or tokens[1] != DSP_FORMAT_TAG:
                raise InstanceFormatError("header must read 'p {0} <n> <m> <k>'".format(DSP_FORMAT_TAG), line_number)
            header = _parse_ints(tokens[2:], 3, line_number, "header")
            if min(header) < 0:
                raise InstanceFormatError("header values must be non-negative", line_number)
            if header[2] == 0:
                raise InvalidInstanceError("line {0}: k = 0".format(line_number))
        elif header is None:
            raise InstanceFormatError("expected the header line first", line_number)
        elif tag == "e":
            u, v = _parse_ints(tokens[1:], 2, line_number, "edge")
            n = header[0]
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInstanceError("line {0}: edge {1}-{2} out of range [0, {3})".format(line_number, u, v, n))
            if u == v:
                raise InvalidInstanceError("line {0}: self-loop {1}-{1}".format(line_number, u))
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise InvalidInstanceError("line {0}: duplicate edge {1}-{2}".format(line_number, u, v))
            seen_edges.add(key)
            edges.append((u, v))
        elif tag == "t":
            s, t = _parse_ints(tokens[1:], 2, line_number, "terminal")
            if s == t:
                raise InvalidInstanceError(
                    "line {0}: terminals within a pair must be distinct, got {1} {2}".format(line_number, s, t))
            terminals.append((s, t))
        else:
            raise InstanceFormatError("unknown line tag '{0}'".format(tag), line_number)

    if header is None:
        raise InstanceFormatError("missing header line", last_line or None)
    n, m, k = header
    if len(edges) != m:
        raise InstanceFormatError("header announces {0} edges, found {1}".format(m, len(edges)), last_line)
    if len(terminals) != k:
        raise InstanceFormatError("header announces {0} terminal pairs, found {1}".format(k, len(terminals)), last_line)
    instance = Instance(Graph(n, edges), terminals)
    logger.debug("Parsed instance {0}".format(instance))
    return instance


def format_instance(instance: Instance, comments: Sequence[str] = ()) -> str:
    lines = ["c {0}".format(c) for c in comments]
    lines.append("p {0} {1} {2} {3}".format(DSP_FORMAT_TAG, instance.n, instance.graph.m, instance.k))
    lines.extend("e {0} {1}".format(u, v) for u, v in instance.graph.edges())
    lines.extend("t {0} {1}".format(s, t) for s, t in instance.terminals)
    return "\n".join(lines) + "\n"


def format_solution(solution: Optional[Solution]) -> str:
    if solution is None:
        return "no\n"
    lines = ["yes"]
    for i, path in enumerate(solution.paths):
        lines.append("path {0}: {1}".format(i + 1, " ".join(str(v) for v in path)))
    return "\n".join(lines) + "\n"


def parse_solution(text: Union[str, bytes, IO]) -> Optional[Solution]:
    """
    Parse the solver output format; returns None for a "no" answer.
    """
    verdict = None
    paths: Dict[int, Path] = dict()
    for line_number, raw in enumerate(_read_source(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        if verdict is None:
            if line not in ("yes", "no"):
                raise InstanceFormatError("expected 'yes' or 'no'", line_number)
            verdict = line
            continue
        if verdict == "no":
            raise InstanceFormatError("unexpected content after 'no'", line_number)
        head, sep, body = line.partition(":")
        head_tokens = head.split()
        if not sep or len(head_tokens) != 2 or head_tokens[0] != "path":
            raise InstanceFormatError("expected 'path <i>: v0 v1 ...'", line_number)
        try:
            index = int(head_tokens[1])
            vertices = tuple(int(t) for t in body.split())
        except ValueError:
            raise InstanceFormatError("non-integer field in path line", line_number)
        if index in paths:
            raise InstanceFormatError("path {0} given twice".format(index), line_number)
        paths[index] = vertices
    if verdict is None:
        raise InstanceFormatError("empty solution")
    if verdict == "no":
        return None
    if sorted(paths) != list(range(1, len(paths) + 1)):
        raise InstanceFormatError("path indices must be 1..{0}".format(len(paths)))
    return Solution(tuple(paths[i] for i in range(1, len(paths) + 1)))
