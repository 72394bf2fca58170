# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Instance corpus: the small crossing example, seeded random and grid
generators, and the reduction from Multicolored Clique to 2k-DSP together
with a brute-force Multicolored Clique checker.
"""

import logging
import random
from itertools import combinations, product
from typing import Dict, IO, List, NamedTuple, Optional, Sequence, Tuple, Union

from .constants import LOGGER_NAME, MCC_FORMAT_TAG, DEFAULT_GEN_RETRIES, DEFAULT_MCC_BUDGET
from .graph_core import Graph, Instance, Solution, UNREACHABLE, bfs_distances, compute_positions, \
    terminals_reachable
from .utils import EnumerationLimitError, GenerationError, InstanceFormatError, InvalidInstanceError, ascii_text


logger = logging.getLogger(LOGGER_NAME)


# The crossing example: s1=0 a1=1 a2=2 a3=3 s2=4 t1=5 b0=6 b1=7 b2=8 b3=9 b4=10 t2=11 c1=12 c2=13.
_FIG1_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (1, 8), (2, 7), (1, 3), (2, 9), (8, 3),
    (5, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 11), (6, 12), (12, 13), (13, 4),
)
_FIG1_TERMINALS = ((0, 5), (4, 11))
_FIG1_PATHS = ((0, 1, 2, 7, 6, 5), (4, 3, 8, 9, 10, 11))


def builtin_fig1() -> Instance:
    """
    14 vertices, 18 edges, two pairs whose shortest paths have to cross.
    Positions (dist to s1, dist to s2): t1 = (5,4), t2 = (5,5).
    """
    return Instance(Graph(14, _FIG1_EDGES), _FIG1_TERMINALS)


def builtin_fig1_solution() -> Solution:
    return Solution(_FIG1_PATHS)


def gen_random(n: int, edge_prob: float, k: int, seed: int, retries: int = DEFAULT_GEN_RETRIES) -> Instance:
    """
    G(n, p) graph with 2k distinct random terminals, resampled until every
    t_i is reachable from s_i.
    """
    if n < 2 * k:
        raise GenerationError("n = {0} is too small for {1} terminal pairs".format(n, k))
    if not 0 < edge_prob <= 1:
        raise GenerationError("edge probability {0} outside (0, 1]".format(edge_prob))
    rng = random.Random(seed)
    for attempt in range(retries):
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < edge_prob]
        chosen = rng.sample(range(n), 2 * k)
        instance = Instance(Graph(n, edges), [(chosen[2 * i], chosen[2 * i + 1]) for i in range(k)])
        if terminals_reachable(instance, compute_positions(instance)):
            if attempt:
                logger.debug("gen_random: seed {0} accepted after {1} resamples".format(seed, attempt))
            return instance
    raise GenerationError("no instance with connected terminal pairs after {0} attempts (n={1}, p={2}, k={3})".format(
        retries, n, edge_prob, k))


def gen_grid(width: int, height: int, terminals: Optional[Sequence[Tuple[int, int]]] = None) -> Instance:
    """
    width x height grid, vertex id = row * width + column. The default pairs
    join opposite corners, so their shortest paths cross.
    """
    if width < 2 or height < 2:
        raise GenerationError("grid must be at least 2 x 2, got {0} x {1}".format(width, height))
    edges = []
    for r in range(height):
        for c in range(width):
            v = r * width + c
            if c + 1 < width:
                edges.append((v, v + 1))
            if r + 1 < height:
                edges.append((v, v + width))
    if terminals is None:
        last = width * height - 1
        terminals = ((0, last), (width - 1, last - width + 1))
    return Instance(Graph(width * height, edges), terminals)


class MccInstance(object):
    """
    Multicolored Clique question: is there a clique with one vertex of every color?
    Colors are 0-based here and 1-based in files.
    """
    def __init__(self, graph: Graph, k: int, coloring: Sequence[int]):
        if len(coloring) != graph.n:
            raise InvalidInstanceError("coloring covers {0} of {1} vertices".format(len(coloring), graph.n))
        for v, c in enumerate(coloring):
            if not 0 <= c < k:
                raise InvalidInstanceError("vertex {0} has color {1} outside [1, {2}]".format(v, c + 1, k))
        missing = sorted(set(range(k)) - set(coloring))
        if missing:
            raise InvalidInstanceError("color classes {0} are empty".format([c + 1 for c in missing]))
        self.graph: Graph = graph
        self.k: int = k
        self.coloring: Tuple[int, ...] = tuple(coloring)

    def color_classes(self) -> List[List[int]]:
        classes = [[] for _ in range(self.k)]
        for v, c in enumerate(self.coloring):
            classes[c].append(v)
        return classes

    def __eq__(self, other):
        return isinstance(other, MccInstance) and (self.graph, self.k, self.coloring) == \
            (other.graph, other.k, other.coloring)

    def __repr__(self):
        return "MccInstance(n={0}, m={1}, k={2})".format(self.graph.n, self.graph.m, self.k)


def _read(text: Union[str, bytes, IO]) -> str:
    if hasattr(text, "read"):
        text = text.read()
    return ascii_text(text)


def parse_mcc(text: Union[str, bytes, IO]) -> MccInstance:
    """
    Parse the MCC text format:
      c <comment>
      p mcc <n> <m> <k>
      e <u> <v>          (m lines)
      v <vertex> <color> (one per vertex, colors 1..k)
    """
    header = None
    edges = []
    coloring: Dict[int, int] = dict()
    for line_number, raw in enumerate(_read(text).splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        try:
            values = [int(t) for t in tokens[2 if tokens[0] == "p" else 1:]]
        except ValueError:
            raise InstanceFormatError("non-integer field", line_number)
        if tokens[0] == "p":
            if header is not None or len(tokens) != 5 or tokens[1] != MCC_FORMAT_TAG:
                raise InstanceFormatError("header must read 'p {0} <n> <m> <k>' once".format(MCC_FORMAT_TAG),
                                          line_number)
            header = values
        elif header is None:
            raise InstanceFormatError("expected the header line first", line_number)
        elif tokens[0] == "e" and len(values) == 2:
            edges.append(tuple(values))
        elif tokens[0] == "v" and len(values) == 2:
            v, c = values
            if v in coloring:
                raise InstanceFormatError("vertex {0} colored twice".format(v), line_number)
            if not 0 <= v < header[0]:
                raise InvalidInstanceError("line {0}: vertex {1} out of range".format(line_number, v))
            coloring[v] = c - 1
        else:
            raise InstanceFormatError("malformed line '{0}'".format(raw.strip()), line_number)
    if header is None:
        raise InstanceFormatError("missing header line")
    n, m, k = header
    if len(edges) != m:
        raise InstanceFormatError("header announces {0} edges, found {1}".format(m, len(edges)))
    if len(coloring) != n:
        raise InstanceFormatError("{0} of {1} vertices are colored".format(len(coloring), n))
    return MccInstance(Graph(n, edges), k, [coloring[v] for v in range(n)])


def format_mcc(mcc: MccInstance) -> str:
    lines = ["p {0} {1} {2} {3}".format(MCC_FORMAT_TAG, mcc.graph.n, mcc.graph.m, mcc.k)]
    lines.extend("e {0} {1}".format(u, v) for u, v in mcc.graph.edges())
    lines.extend("v {0} {1}".format(v, c + 1) for v, c in enumerate(mcc.coloring))
    return "\n".join(lines) + "\n"


def gen_random_mcc(k: int, max_per_color: int, edge_prob: float, seed: int) -> MccInstance:
    """
    Color classes of 1..max_per_color vertices each; every pair of vertices of
    different colors is joined with probability edge_prob.
    """
    if k < 1 or max_per_color < 1:
        raise GenerationError("need k >= 1 and max_per_color >= 1, got {0} and {1}".format(k, max_per_color))
    rng = random.Random(seed)
    coloring = []
    for c in range(k):
        coloring.extend([c] * rng.randint(1, max_per_color))
    n = len(coloring)
    edges = [(u, v) for u, v in combinations(range(n), 2)
             if coloring[u] != coloring[v] and rng.random() < edge_prob]
    return MccInstance(Graph(n, edges), k, coloring)


def mcc_bruteforce(mcc: MccInstance, budget: int = DEFAULT_MCC_BUDGET) -> bool:
    classes = mcc.color_classes()
    size = 1
    for cls in classes:
        size *= len(cls)
    if size > budget:
        raise EnumerationLimitError("{0} candidate cliques exceed the budget of {1}".format(size, budget))
    graph = mcc.graph
    for clique in product(*classes):
        if all(graph.has_edge(u, v) for u, v in combinations(clique, 2)):
            return True
    return False


class McReduction(NamedTuple):
    """
    A generated 2k-DSP instance. names[v] tells where vertex v comes from,
    e.g. "s1", "p[3][2]" (vertex 3 of the clique graph, grid column 2) or
    "sp[3][5]" (subdivision vertex); merges lists the identified (p, q) pairs.
    """
    instance: Instance
    names: Tuple[str, ...]
    merges: Tuple[Tuple[str, str], ...]
    unmerged_vertex_count: int


class _Builder(object):
    def __init__(self):
        self.names: List[str] = []
        self.edges: List[Tuple[int, int]] = []

    def add(self, name: str) -> int:
        self.names.append(name)
        return len(self.names) - 1

    def chain(self, vertices: Sequence[int]):
        self.edges.extend(zip(vertices, vertices[1:]))


def gen_mcc_reduction(mcc: MccInstance) -> McReduction:
    """
    Every clique vertex v of color a becomes a horizontal path
    P_v = s_a, n subdivisions, p_v^1 .. p_v^n, n subdivisions, t_a and a
    vertical path Q_v running from s_{k+a} to t_{k+a} in the same way. For
    vertices v_i != v_j of equal color, or not adjacent, p_{v_i}^j and
    q_{v_j}^i are merged, so the two paths cannot both be used. The shortest
    s_a-t_a paths are exactly the P_v of color a, and 2k disjoint shortest
    paths exist iff a multicolored clique does.
    """
    n, k = mcc.graph.n, mcc.k
    b = _Builder()
    sources = [b.add("s{0}".format(a + 1)) for a in range(2 * k)]
    sinks = [b.add("t{0}".format(a + 1)) for a in range(2 * k)]
    p = [[0] * n for _ in range(n)]
    q = [[0] * n for _ in range(n)]
    for v in range(n):
        a = mcc.coloring[v]
        for grid, tag, pair in ((p, "p", a), (q, "q", k + a)):
            head = [b.add("s{0}[{1}][{2}]".format(tag, v, x + 1)) for x in range(n)]
            for j in range(n):
                grid[v][j] = b.add("{0}[{1}][{2}]".format(tag, v, j + 1))
            tail = [b.add("t{0}[{1}][{2}]".format(tag, v, x + 1)) for x in range(n)]
            b.chain([sources[pair]] + head + grid[v] + tail + [sinks[pair]])
    unmerged = len(b.names)

    # Every merge folds a q vertex into its p partner.
    target = list(range(unmerged))
    merges = []
    for i, j in product(range(n), range(n)):
        if i == j:
            continue
        if mcc.coloring[i] == mcc.coloring[j] or not mcc.graph.has_edge(i, j):
            target[q[j][i]] = p[i][j]
            merges.append((b.names[p[i][j]], b.names[q[j][i]]))

    kept = [v for v in range(unmerged) if target[v] == v]
    new_id = {v: idx for idx, v in enumerate(kept)}
    edges = sorted({tuple(sorted((new_id[target[u]], new_id[target[w]]))) for u, w in b.edges})
    terminals = [(new_id[sources[a]], new_id[sinks[a]]) for a in range(2 * k)]
    instance = Instance(Graph(len(kept), edges), terminals)
    reduction = McReduction(instance, tuple(b.names[v] for v in kept), tuple(merges), unmerged)

    _check_grid_distances(reduction, n, k,
                          [[new_id[p[v][j]] for j in range(n)] for v in range(n)],
                          [[new_id[target[q[v][j]]] for j in range(n)] for v in range(n)])
    logger.info("gen_mcc_reduction: {0} -> {1} with {2} merges".format(mcc, instance, len(merges)))
    return reduction


def _check_grid_distances(reduction: McReduction, n: int, k: int, p_ids, q_ids):
    """
    From a source of its own direction, grid vertex j of a path is at least
    n + j away; from a source of the other direction, a grid vertex of the
    path of v_i is at least n + i away. Both are 1-based here.
    """
    graph, terminals = reduction.instance.graph, reduction.instance.terminals
    for a in range(2 * k):
        dist = bfs_distances(graph, terminals[a][0])
        own, other = (p_ids, q_ids) if a < k else (q_ids, p_ids)
        for v, j in product(range(n), range(n)):
            for ids, bound in ((own, n + j + 1), (other, n + v + 1)):
                d = dist[ids[v][j]]
                if d is not UNREACHABLE and d < bound:
                    raise GenerationError("grid vertex {0} is only {1} away from {2}, expected at least {3}".format(
                        reduction.names[ids[v][j]], d, reduction.names[terminals[a][0]], bound))
