# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import logging
from typing import Dict, List, Optional, Tuple

import graphviz

from .constants import LOGGER_NAME
from .graph_core import Instance, PositionTable, Solution, compute_positions
from .geometry import Point, project_positions, rotated_box
from .utils import BadRequestError


logger = logging.getLogger(LOGGER_NAME)

# Inches per lattice step in the drawing.
_SCALE = 0.8
_PATH_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown", "deeppink", "cyan4")


def _point_id(point: Point) -> str:
    return "p{0}_{1}".format(*point)


def _pin(x: float, y: float) -> str:
    # Coordinate b grows downwards, as in the usual drawings of the embedding.
    return "{0:.3f},{1:.3f}!".format(x * _SCALE, -y * _SCALE)


def _area_corners(x: Point, y: Point) -> List[Tuple[float, float]]:
    u_lo, u_hi, v_lo, v_hi = rotated_box(x, y)
    return [((u + v) / 2.0, (v - u) / 2.0) for u, v in ((u_lo, v_lo), (u_hi, v_lo), (u_hi, v_hi), (u_lo, v_hi))]


def projection_graph(instance: Instance, a: int, b: int, solution: Optional[Solution] = None,
                     positions: Optional[PositionTable] = None) -> graphviz.Graph:
    """
    The vertices of the instance at their (a,b) positions, one node per
    occupied lattice point, the area between s_i and t_i of every pair as a
    tilted rectangle and the solution paths as colored polylines. a and b are
    0-based coordinates. Vertices not connected to s_a or s_b are left out.
    """
    if not (0 <= a < instance.k and 0 <= b < instance.k) or a == b:
        raise BadRequestError("coordinates ({0},{1}) invalid for k = {2}".format(a + 1, b + 1, instance.k))
    positions = compute_positions(instance) if positions is None else positions

    dot = graphviz.Graph("projection_{0}_{1}".format(a + 1, b + 1), engine="neato",
                         comment="projection to coordinates ({0},{1})".format(a + 1, b + 1))
    dot.attr("node", shape="circle", fontsize="9", width="0.35", fixedsize="true")

    groups: Dict[Point, List[int]] = dict()
    for v in range(instance.n):
        if positions.reachable(v, (a, b)):
            groups.setdefault(project_positions(positions, v, a, b), []).append(v)
    terminals = instance.terminal_set()
    for point, vertices in sorted(groups.items()):
        dot.node(_point_id(point), ",".join(str(v) for v in vertices), pos=_pin(*point),
                 penwidth="2" if terminals.intersection(vertices) else "1")

    for i, (s, t) in enumerate(instance.terminals):
        if not (positions.reachable(s, (a, b)) and positions.reachable(t, (a, b))):
            continue
        corners = _area_corners(project_positions(positions, s, a, b), project_positions(positions, t, a, b))
        names = ["area{0}_{1}".format(i + 1, c) for c in range(4)]
        for name, (x, y) in zip(names, corners):
            dot.node(name, "", shape="point", width="0.01", pos=_pin(x, y))
        for u, w in zip(names, names[1:] + names[:1]):
            dot.edge(u, w, style="dashed", color="gray50")

    if solution is not None:
        for i, path in enumerate(solution.paths):
            color = _PATH_COLORS[i % len(_PATH_COLORS)]
            for u, w in zip(path, path[1:]):
                if positions.reachable(u, (a, b)) and positions.reachable(w, (a, b)):
                    dot.edge(_point_id(project_positions(positions, u, a, b)),
                             _point_id(project_positions(positions, w, a, b)),
                             color=color, penwidth="2.5")
    logger.debug("export_dot: {0} lattice points in projection ({1},{2})".format(len(groups), a + 1, b + 1))
    return dot


def render(dot: graphviz.Graph, fmt: str = "dot") -> str:
    if fmt == "dot":
        return dot.source
    if fmt == "svg":
        return dot.pipe(format="svg").decode("utf-8")
    raise BadRequestError("unsupported output format {0}".format(fmt))
