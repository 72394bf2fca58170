# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Geometry of the position embedding.

Every vertex v sits at pos(v), the vector of its BFS distances to the k sources.
A vertex pair (u, w) is colored when dist(u, w) equals the infinity norm of
pos(u) - pos(w), and a-colored when coordinate a attains that norm. The area
between two points x, y is the set of points z with
|x - z| + |z - y| = |x - y| in the infinity norm; projected to two coordinates
it is a rectangle tilted by 45 degrees, i.e. an axis-parallel box in the
rotated coordinates u = z1 - z2, v = z1 + z2.

Coordinates are 0-based: coordinate i is the distance to the source of pair i+1.
Half-integer points are handled by doubling all coordinates, so everything in
here is integer arithmetic.
"""

import json
import logging
from itertools import product
from typing import FrozenSet, List, NamedTuple, Optional, Sequence, Set, Tuple

from .constants import LOGGER_NAME
from .graph_core import DistanceOracle, Path, PositionTable, UNREACHABLE, between
from .utils import BadRequestError, GeometryError


logger = logging.getLogger(LOGGER_NAME)

Point = Tuple[int, ...]
Box = Tuple[int, int, int, int]


class ColorSet(NamedTuple):
    colors: FrozenSet[int]
    is_colored: bool
    excluded: FrozenSet[int] = frozenset()


class CrossingSide(NamedTuple):
    alpha: Optional[int] = None
    omega: Optional[int] = None
    partial: Optional[int] = None
    varpi: Optional[int] = None
    delta: Optional[int] = None

    def vertices(self) -> Set[int]:
        return {v for v in self if v is not None}


class CrossingRecord(NamedTuple):
    p: CrossingSide
    q: CrossingSide
    crossing: bool

    def to_json_line(self) -> str:
        doc = dict()
        for side, rec in (("P", self.p), ("Q", self.q)):
            for field in CrossingSide._fields:
                doc["{0}_{1}".format(field, side)] = getattr(rec, field)
        doc["crossing"] = self.crossing
        return json.dumps(doc, sort_keys=True)


def color_set(positions: PositionTable, distances: DistanceOracle, u: int, w: int) -> ColorSet:
    pu, pw = positions[u], positions[w]
    consulted = [c for c in range(positions.k) if pu[c] is not UNREACHABLE and pw[c] is not UNREACHABLE]
    excluded = frozenset(c for c in range(positions.k) if c not in consulted)
    d = distances.dist(u, w)
    if d is UNREACHABLE:
        return ColorSet(frozenset(), False, excluded)
    diffs = {c: abs(pu[c] - pw[c]) for c in consulted}
    norm = max(diffs.values(), default=0)
    if norm != d:
        return ColorSet(frozenset(), False, excluded)
    return ColorSet(frozenset(c for c, diff in diffs.items() if diff == norm), True, excluded)


def colored_in(positions: PositionTable, distances: DistanceOracle, u: int, w: int, c: int) -> bool:
    """
    Whether the pair (u, w) is c-colored.
    """
    pu, pw = positions[u][c], positions[w][c]
    if pu is UNREACHABLE or pw is UNREACHABLE:
        return False
    return distances.dist(u, w) == abs(pu - pw)


def path_colored_in(path: Path, positions: PositionTable, distances: DistanceOracle, c: int) -> bool:
    return len(path) - 1 == distances.dist(path[0], path[-1]) and \
        colored_in(positions, distances, path[0], path[-1], c)


def _norm(x: Sequence[int], y: Sequence[int], coords: Sequence[int]) -> int:
    return max((abs(x[c] - y[c]) for c in coords), default=0)


def rect_membership(x: Sequence[int], y: Sequence[int], z: Sequence[int],
                    coords: Optional[Sequence[int]] = None) -> bool:
    if not len(x) == len(y) == len(z):
        raise GeometryError("dimension mismatch: {0}, {1}, {2}".format(x, y, z))
    coords = range(len(x)) if coords is None else coords
    return _norm(x, z, coords) + _norm(z, y, coords) == _norm(x, y, coords)


def rotated_box(x: Sequence[int], y: Sequence[int]) -> Box:
    """
    The 2D area between x and y as (u_lo, u_hi, v_lo, v_hi) with u = z1 - z2, v = z1 + z2.
    """
    xu, xv = x[0] - x[1], x[0] + x[1]
    yu, yv = y[0] - y[1], y[0] + y[1]
    return min(xu, yu), max(xu, yu), min(xv, yv), max(xv, yv)


def box_contains(box: Box, z: Sequence[int]) -> bool:
    zu, zv = z[0] - z[1], z[0] + z[1]
    return box[0] <= zu <= box[1] and box[2] <= zv <= box[3]


def rect_intersect_2d(x: Sequence[int], y: Sequence[int], xh: Sequence[int], yh: Sequence[int]) -> bool:
    # The four min/max conditions over coordinate differences and sums.
    return min(x[0] - x[1], y[0] - y[1]) <= max(xh[0] - xh[1], yh[0] - yh[1]) and \
        min(xh[0] - xh[1], yh[0] - yh[1]) <= max(x[0] - x[1], y[0] - y[1]) and \
        min(x[0] + x[1], y[0] + y[1]) <= max(xh[0] + xh[1], yh[0] + yh[1]) and \
        min(xh[0] + xh[1], yh[0] + yh[1]) <= max(x[0] + x[1], y[0] + y[1])


class Rect(object):
    """
    The area between the corners x and y.
    """
    def __init__(self, x: Sequence[int], y: Sequence[int]):
        if len(x) != len(y):
            raise GeometryError("corners of different dimension: {0}, {1}".format(x, y))
        self.x: Point = tuple(x)
        self.y: Point = tuple(y)

    def contains(self, z: Sequence[int], coords: Optional[Sequence[int]] = None) -> bool:
        return rect_membership(self.x, self.y, z, coords)

    def project(self, coords: Sequence[int]) -> "Rect":
        return Rect([self.x[c] for c in coords], [self.y[c] for c in coords])

    def rotated_bounds(self) -> Box:
        if len(self.x) != 2:
            raise GeometryError("rotated bounds exist for 2D areas only, got dimension {0}".format(len(self.x)))
        return rotated_box(self.x, self.y)

    def intersects(self, other: "Rect") -> bool:
        return rect_intersect_2d(self.x, self.y, other.x, other.y)

    def __repr__(self):
        return "Rect({0}, {1})".format(self.x, self.y)


def project_positions(positions: PositionTable, v: int, a: int, b: int) -> Point:
    pa, pb = positions[v][a], positions[v][b]
    if pa is UNREACHABLE or pb is UNREACHABLE:
        raise GeometryError("vertex {0} has no position in coordinates ({1},{2})".format(v, a, b))
    return pa, pb


def _doubled_samples(path: Path, positions: PositionTable, a: int, b: int) -> List[Tuple[Point, Optional[int]]]:
    """
    The projected polyline of a path as doubled lattice points: every vertex
    followed by the midpoint of the edge to the next vertex.
    """
    pts = [project_positions(positions, v, a, b) for v in path]
    samples: List[Tuple[Point, Optional[int]]] = []
    for i, v in enumerate(path):
        samples.append(((2 * pts[i][0], 2 * pts[i][1]), v))
        if i + 1 < len(path):
            samples.append(((pts[i][0] + pts[i + 1][0], pts[i][1] + pts[i + 1][1]), None))
    return samples


def _collinear(points: Sequence[Point]) -> bool:
    if len(points) <= 2:
        return True
    (x0, y0), (x1, y1) = points[0], points[-1]
    return all((x1 - x0) * (y - y0) == (y1 - y0) * (x - x0) for x, y in points)


def _side(samples: List[Tuple[Point, Optional[int]]], common: Set[Point]) -> CrossingSide:
    idx = [i for i, (pt, _) in enumerate(samples) if pt in common]
    first, last = idx[0], idx[-1]
    if last - first + 1 != len(idx) or not _collinear([samples[i][0] for i in idx]):
        raise GeometryError("projected intersection is not a single straight segment")
    inside = [v for _, v in samples[first:last + 1] if v is not None]
    before = [v for _, v in samples[:first] if v is not None]
    after = [v for _, v in samples[last + 1:] if v is not None]
    return CrossingSide(
        alpha=inside[0] if inside else None,
        omega=inside[-1] if inside else None,
        partial=before[-1] if before else None,
        varpi=after[0] if after else None)


def _check_crossing_colored(path: Path, side: CrossingSide, positions: PositionTable, a: int, b: int):
    if side.alpha is None:
        return
    i, j = path.index(side.alpha), path.index(side.omega)
    da = abs(positions[side.alpha][a] - positions[side.omega][a])
    db = abs(positions[side.alpha][b] - positions[side.omega][b])
    if not da == db == j - i:
        raise GeometryError("crossing subpath {0}..{1} is not ({2},{3})-colored".format(
            side.alpha, side.omega, a, b))


def delta_vertex(path: Path, q_ends: Tuple[int, int], a: int, b: int,
                 positions: PositionTable, distances: DistanceOracle) -> Optional[int]:
    """
    The vertex v of the a-colored path with v aligned to an endpoint of the
    b-colored pair in coordinate a but strictly outside the pair in coordinate b:
    (v =^a s_Q and v <^b s_Q) or (v =^a t_Q and v >^b t_Q), taking s_Q <^b t_Q.
    The path has to be a-colored and the pair b-colored.
    """
    s_q, t_q = q_ends
    if not path_colored_in(path, positions, distances, a):
        raise BadRequestError("delta_vertex: path {0} is not {1}-colored".format(path, a))
    if not colored_in(positions, distances, s_q, t_q, b):
        raise BadRequestError("delta_vertex: pair {0} is not {1}-colored".format(q_ends, b))
    ps, pt = project_positions(positions, s_q, a, b), project_positions(positions, t_q, a, b)
    if ps[1] > pt[1]:
        ps, pt = pt, ps
    found = [v for v in path
             if (positions[v][a] == ps[0] and positions[v][b] < ps[1]) or
                (positions[v][a] == pt[0] and positions[v][b] > pt[1])]
    if len(found) > 1:
        raise GeometryError("delta vertex is not unique on path {0}: {1}".format(path, found))
    return found[0] if found else None


def delta_candidates(ends: Tuple[int, int], q_ends: Tuple[int, int], a: int, b: int,
                     positions: PositionTable, distances: DistanceOracle) -> List[int]:
    """
    All vertices that could serve as the delta vertex of some shortest path between `ends`.
    """
    s_q, t_q = q_ends
    ps, pt = positions[s_q], positions[t_q]
    if ps[b] > pt[b]:
        ps, pt = pt, ps
    found = []
    for v in range(positions.n):
        pv = positions[v]
        if pv[a] is UNREACHABLE or pv[b] is UNREACHABLE:
            continue
        if (pv[a] == ps[a] and pv[b] < ps[b]) or (pv[a] == pt[a] and pv[b] > pt[b]):
            if between(distances, ends[0], v, ends[1]):
                found.append(v)
    return found


def crossing_vertices(p: Path, q: Path, a: int, b: int,
                      positions: PositionTable, distances: DistanceOracle) -> CrossingRecord:
    """
    Crossing record of the a-colored path P and the b-colored path Q in the (a,b) projection.
    The delta vertices are reported only when the paths do not cross.
    """
    if not path_colored_in(p, positions, distances, a):
        raise GeometryError("path {0} is not {1}-colored".format(p, a))
    if not path_colored_in(q, positions, distances, b):
        raise GeometryError("path {0} is not {1}-colored".format(q, b))
    samples_p = _doubled_samples(p, positions, a, b)
    samples_q = _doubled_samples(q, positions, a, b)
    common = {pt for pt, _ in samples_p} & {pt for pt, _ in samples_q}
    if not common:
        return CrossingRecord(
            p=CrossingSide(delta=delta_vertex(p, (q[0], q[-1]), a, b, positions, distances)),
            q=CrossingSide(delta=delta_vertex(q, (p[0], p[-1]), b, a, positions, distances)),
            crossing=False)
    side_p = _side(samples_p, common)
    side_q = _side(samples_q, common)
    _check_crossing_colored(p, side_p, positions, a, b)
    _check_crossing_colored(q, side_q, positions, a, b)
    return CrossingRecord(p=side_p, q=side_q, crossing=True)


def crossing_set_2d(p: Path, q: Path, a: int, b: int,
                    positions: PositionTable, distances: DistanceOracle) -> Set[int]:
    record = crossing_vertices(p, q, a, b, positions, distances)
    return {p[0], p[-1]} | record.p.vertices()


def is_straight_projection(path: Path, positions: PositionTable, coords: Sequence[int]) -> bool:
    """
    Whether all projected edge vectors of the path are equal.
    """
    steps = {tuple(positions[w][c] - positions[v][c] for c in coords) for v, w in zip(path, path[1:])}
    return len(steps) <= 1


def common_area_nonempty(pair1: Tuple[int, int], pair2: Tuple[int, int], a: int, b: int,
                         positions: PositionTable) -> bool:
    x, y = (project_positions(positions, v, a, b) for v in pair1)
    xh, yh = (project_positions(positions, v, a, b) for v in pair2)
    return rect_intersect_2d(x, y, xh, yh)


def _avoiding_1d(x: int, y: int, xh: int, yh: int) -> bool:
    lo, hi = max(min(x, y), min(xh, yh)), min(max(x, y), max(xh, yh))
    if lo > hi:
        return True
    return lo == hi and lo in ({x, y} & {xh, yh})


def _avoiding_2d(x: Point, y: Point, xh: Point, yh: Point) -> bool:
    b1, b2 = rotated_box(x, y), rotated_box(xh, yh)
    u_lo, u_hi = max(b1[0], b2[0]), min(b1[1], b2[1])
    v_lo, v_hi = max(b1[2], b2[2]), min(b1[3], b2[3])
    if u_lo > u_hi or v_lo > v_hi:
        return True
    if u_lo != u_hi or v_lo != v_hi:
        return False
    # A single common point, doubled back from rotated coordinates.
    point = (u_lo + v_lo, v_lo - u_lo)
    shared = {(2 * p[0], 2 * p[1]) for p in (x, y)} & {(2 * p[0], 2 * p[1]) for p in (xh, yh)}
    return point in shared


def _avoiding_in(pair1, pair2, coords: Sequence[int], positions: PositionTable) -> bool:
    if len(coords) == 1:
        c = coords[0]
        return _avoiding_1d(*(positions[v][c] for v in pair1 + pair2))
    a, b = coords
    pts = [project_positions(positions, v, a, b) for v in pair1 + pair2]
    return _avoiding_2d(*pts)


def pairs_avoiding(pair1: Tuple[int, int], pair2: Tuple[int, int], coords: Sequence[int],
                   positions: PositionTable, distances: DistanceOracle) -> bool:
    """
    Whether the areas of the two pairs, projected to `coords`, meet at most in
    shared endpoints. Exact for one or two coordinates; for more, a projection
    to one color of each pair has to witness it.
    """
    colors1 = color_set(positions, distances, *pair1)
    colors2 = color_set(positions, distances, *pair2)
    if not colors1.is_colored or not colors2.is_colored:
        raise GeometryError("pairs_avoiding needs colored pairs, got {0} and {1}".format(pair1, pair2))
    coords = list(coords)
    for v in pair1 + pair2:
        if not positions.reachable(v, coords):
            raise GeometryError("vertex {0} has no position in coordinates {1}".format(v, coords))
    if len(coords) <= 2:
        return _avoiding_in(pair1, pair2, coords, positions)
    for a, b in product(sorted(colors1.colors & set(coords)), sorted(colors2.colors & set(coords))):
        witness = [a] if a == b else [a, b]
        if _avoiding_in(pair1, pair2, witness, positions):
            return True
    return False


def paths_avoiding(p: Path, q: Path, coords: Sequence[int], positions: PositionTable) -> bool:
    """
    Whether no internal vertex of either path shares its projected position with
    any vertex of the other path.
    """
    proj_p = {positions.project(v, coords) for v in p}
    proj_q = {positions.project(v, coords) for v in q}
    return all(positions.project(v, coords) not in proj_q for v in p[1:-1]) and \
        all(positions.project(v, coords) not in proj_p for v in q[1:-1])
