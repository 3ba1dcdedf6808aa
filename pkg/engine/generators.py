"""Instance families: grids, the nested-rings channel and random drawings."""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from config import config
from embed_core import (
    EmbeddedPlanarGraph,
    Terminals,
    build_embedding,
    make_terminals,
    outer_darts_from_coords,
    rotation_from_coords,
)
from errors import InstanceFormatError
from instance_io import instance_from_embedding
from models import InstanceFile

logger = logging.getLogger(__name__)

FAMILIES = ("grid", "rings", "random")

Coords = Dict[int, Tuple[float, float]]


def _lattice_edges(cells: Dict[Tuple[int, int], int]) -> Dict[int, Tuple[int, int]]:
    edges: Dict[int, Tuple[int, int]] = {}
    for (x, y), v in sorted(cells.items(), key=lambda item: item[1]):
        for nx_, ny in ((x + 1, y), (x, y + 1)):
            w = cells.get((nx_, ny))
            if w is not None:
                edges[len(edges)] = (v, w)
    return edges


def _drawing(
    vertices: List[int],
    edges: Dict[int, Tuple[int, int]],
    coords: Coords,
    S: List[int],
    T: List[int],
) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    rotation = rotation_from_coords(vertices, edges, coords)
    outer = outer_darts_from_coords(vertices, edges, rotation, coords)
    return build_embedding(vertices, edges, rotation, outer, S, T, None, coords)


def grid(n: int) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    """n x n grid, vertex ``y*n + x`` at (x, y); S left column, T right column."""
    if n < 2:
        raise InstanceFormatError("grid needs n >= 2")
    cells = {(x, y): y * n + x for y in range(n) for x in range(n)}
    coords = {v: (float(x), float(y)) for (x, y), v in cells.items()}
    S = [y * n for y in range(n)]
    T = [y * n + n - 1 for y in range(n)]
    return _drawing(sorted(cells.values()), _lattice_edges(cells), coords, S, T)


def rings(layers: int = 3, spacing: int = 4) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    """Two funnels joined by a narrow channel.

    The channel is ``layers * spacing`` rows high, so a chain of ``layers``
    vertical logs of length ``spacing - 1`` crosses it. The left funnel's
    outer column holds S and the right one's holds T, a terminal every
    ``2 * spacing`` rows, ``layers + 1`` of each.
    """
    if layers < 1 or spacing < 1:
        raise InstanceFormatError("rings needs layers >= 1 and spacing >= 1")
    height = 2 * layers * spacing
    width = 3 * spacing + 2
    low = (height - layers * spacing) // 2
    high = low + layers * spacing - 1
    cells: Dict[Tuple[int, int], int] = {}
    for y in range(height + 1):
        for x in range(width):
            in_funnel = x <= spacing or x >= 2 * spacing + 1
            if in_funnel or low <= y <= high:
                cells[(x, y)] = y * width + x
    coords = {v: (float(x), float(y)) for (x, y), v in cells.items()}
    rows = range(0, height + 1, 2 * spacing)
    S = [cells[(0, y)] for y in rows]
    T = [cells[(width - 1, y)] for y in rows]
    return _drawing(sorted(cells.values()), _lattice_edges(cells), coords, S, T)


def _orient(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segments_cross(p, q, r, s) -> bool:
    """Proper crossing of pq and rs; segments sharing an end never cross."""
    if {p, q} & {r, s}:
        return False
    return (_orient(p, q, r) > 0) != (_orient(p, q, s) > 0) and (
        _orient(r, s, p) > 0
    ) != (_orient(r, s, q) > 0)


def random_instance(
    n: int, seed: Optional[int] = None, drop: float = 0.45
) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    """Random straight-line drawing on n points with terminals on its outer walk.

    The points are uniform in a 10 x 10 square. Segments are added shortest
    first whenever they cross nothing already drawn, which triangulates the
    points; each edge is then deleted with probability ``drop`` unless that
    disconnects the graph, leaving bridges, cut vertices and pendant lobes.
    Every outer vertex joins S and, independently, T with probability 0.4,
    so S and T may share vertices; an empty side gets one random outer
    vertex. Edge insertion is cubic in n, so keep n small.
    """
    if n < 2:
        raise InstanceFormatError("random needs n >= 2")
    rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
    points = rng.uniform(0.0, 10.0, size=(n, 2))
    coords: Coords = {v: (float(x), float(y)) for v, (x, y) in enumerate(points)}

    candidates = sorted(
        combinations(range(n), 2),
        key=lambda uv: (float(np.hypot(*(points[uv[0]] - points[uv[1]]))), uv),
    )
    drawn: List[Tuple[int, int]] = []
    for u, v in candidates:
        if not any(
            _segments_cross(coords[u], coords[v], coords[a], coords[b]) for a, b in drawn
        ):
            drawn.append((u, v))

    graph = nx.Graph(drawn)
    for index in rng.permutation(len(drawn)):
        u, v = drawn[int(index)]
        if rng.random() < drop:
            graph.remove_edge(u, v)
            if not nx.is_connected(graph):
                graph.add_edge(u, v)
    kept = sorted(tuple(sorted(uv)) for uv in graph.edges)
    edges = {e: pair for e, pair in enumerate(kept)}

    vertices = list(range(n))
    rotation = rotation_from_coords(vertices, edges, coords)
    outer = outer_darts_from_coords(vertices, edges, rotation, coords)
    G = EmbeddedPlanarGraph(vertices, edges, rotation, outer, coords)
    boundary = sorted(G.outer_vertices)
    S = [v for v in boundary if rng.random() < 0.4]
    T = [v for v in boundary if rng.random() < 0.4]
    if not S:
        S = [int(rng.choice(boundary))]
    if not T:
        T = [int(rng.choice(boundary))]
    logger.debug("Random drawing: %d of %d edges kept", len(kept), len(drawn))
    return G, make_terminals(G, S, T)


def gen_instance(
    family: str, size: int, seed: Optional[int] = None, spacing: int = 4
) -> InstanceFile:
    """Generate an instance document.

    ``size`` is the side for grids, the layer count for rings and the vertex
    count for random drawings.
    """
    if family == "grid":
        G, terminals = grid(size)
    elif family == "rings":
        G, terminals = rings(size, spacing)
    elif family == "random":
        G, terminals = random_instance(size, seed)
    else:
        raise InstanceFormatError(f"unknown family {family!r}; choose from {FAMILIES}")
    seed = config.DEFAULT_SEED if seed is None else seed
    name = f"{family}-{size}-{seed}"
    logger.info("Generated %s: %r", name, G)
    return instance_from_embedding(G, terminals, name=name)
