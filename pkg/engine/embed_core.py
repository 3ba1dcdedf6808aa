"""Embedded planar graphs given as rotation systems.

Holds the drawing (rotations, faces, outer face), the terminals and their
bounding curve, intervals on that curve, graph distances, edge contraction
and depth-based pruning. Everything downstream reads the drawing through
this module.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from errors import (
    BoundaryOrderError,
    DisconnectedGraph,
    DuplicateEdge,
    EmbeddingError,
    EmptySet,
    EmptyTerminalSide,
    EulerViolation,
    IdenticalIntervals,
    InvalidDemand,
    LoopEdge,
    NotInternallyDisjoint,
    RotationMismatch,
    TerminalNotOnOuterFace,
    UnknownEdge,
)

logger = logging.getLogger(__name__)

Dart = Tuple[int, int]  # (tail vertex, edge id)
Region = Tuple[str, int]  # ("face", face id) or ("gap", gap index)


# ---------------------------------------------------------------------------
# Face tracing
# ---------------------------------------------------------------------------


def _trace(
    edges: Dict[int, Tuple[int, int]], rotation: Dict[int, Sequence[int]]
) -> Tuple[List[Tuple[Dart, ...]], Dict[Dart, int]]:
    """Trace every face of a rotation system.

    The successor of the dart u->v along edge e is the dart leaving v along
    the edge just before e in v's counterclockwise rotation, which keeps the
    face on the left.
    """
    position = {(v, e): i for v, rot in rotation.items() for i, e in enumerate(rot)}
    faces: List[Tuple[Dart, ...]] = []
    face_of: Dict[Dart, int] = {}
    for v in sorted(rotation):
        for e in rotation[v]:
            if (v, e) in face_of:
                continue
            walk = []
            dart = (v, e)
            while dart not in face_of:
                face_of[dart] = len(faces)
                walk.append(dart)
                tail, eid = dart
                a, b = edges[eid]
                head = b if tail == a else a
                rot = rotation[head]
                dart = (head, rot[(position[(head, eid)] - 1) % len(rot)])
            faces.append(tuple(walk))
    return faces, face_of


class EmbeddedPlanarGraph:
    """A simple graph drawn in the plane, described combinatorially.

    ``rotation[v]`` lists the edge ids at ``v`` in counterclockwise order.
    Faces keep their region on the left of each dart, so inner faces run
    counterclockwise and outer faces run clockwise. ``outer`` holds one dart
    of the outer face for every connected component that has edges.
    ``coords`` is only used for drawing.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Dict[int, Tuple[int, int]],
        rotation: Dict[int, Sequence[int]],
        outer: Sequence[Dart] = (),
        coords: Optional[Dict[int, Tuple[float, float]]] = None,
    ):
        self.vertices: FrozenSet[int] = frozenset(int(v) for v in vertices)
        self.edges: Dict[int, Tuple[int, int]] = {
            int(e): (int(u), int(v)) for e, (u, v) in edges.items()
        }
        self._check_edges(rotation)
        self.rotation: Dict[int, Tuple[int, ...]] = {
            v: tuple(int(e) for e in rotation.get(v, ())) for v in self.vertices
        }
        self._check_rotation()
        self.outer: Tuple[Dart, ...] = tuple((int(t), int(e)) for t, e in outer)
        self.coords = (
            {v: tuple(p) for v, p in coords.items() if v in self.vertices}
            if coords
            else None
        )
        self._position = {
            (v, e): i for v, rot in self.rotation.items() for i, e in enumerate(rot)
        }
        self.faces, self.face_of = _trace(self.edges, self.rotation)
        self._check_outer_and_euler()

    # -- validation ---------------------------------------------------------

    def _check_edges(self, rotation: Dict[int, Sequence[int]]) -> None:
        seen = {}
        for e, (u, v) in self.edges.items():
            if u == v:
                raise LoopEdge(f"edge {e} is a loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise EmbeddingError(f"edge {e} has an unknown endpoint")
            key = frozenset((u, v))
            if key in seen:
                raise DuplicateEdge(f"edges {seen[key]} and {e} both join {u} and {v}")
            seen[key] = e
        unknown = set(rotation) - self.vertices
        if unknown:
            raise EmbeddingError(f"rotation given for unknown vertex {min(unknown)}")

    def _check_rotation(self) -> None:
        incident: Dict[int, set] = {v: set() for v in self.vertices}
        for e, (u, v) in self.edges.items():
            incident[u].add(e)
            incident[v].add(e)
        for v, rot in self.rotation.items():
            for e in rot:
                if e not in self.edges:
                    raise UnknownEdge(f"rotation of {v} lists unknown edge {e}")
                if v not in self.edges[e]:
                    raise RotationMismatch(f"edge {e} is not incident with {v}")
            if len(set(rot)) != len(rot) or set(rot) != incident[v]:
                raise RotationMismatch(
                    f"rotation of {v} must list each incident edge exactly once"
                )

    def _check_outer_and_euler(self) -> None:
        component_of = {}
        for index, comp in enumerate(self.components()):
            for v in comp:
                component_of[v] = index
        witnesses: Dict[int, Dart] = {}
        for tail, e in self.outer:
            if e not in self.edges or tail not in self.edges[e]:
                raise EmbeddingError(f"outer dart ({tail}, {e}) is not a dart")
            comp = component_of[tail]
            if comp in witnesses:
                raise EmbeddingError(f"component of {tail} has two outer darts")
            witnesses[comp] = (tail, e)

        vertex_count: Dict[int, int] = {}
        edge_count: Dict[int, int] = {}
        face_count: Dict[int, int] = {}
        for v in self.vertices:
            c = component_of[v]
            vertex_count[c] = vertex_count.get(c, 0) + 1
        for u, _ in self.edges.values():
            c = component_of[u]
            edge_count[c] = edge_count.get(c, 0) + 1
        for walk in self.faces:
            c = component_of[walk[0][0]]
            face_count[c] = face_count.get(c, 0) + 1
        for c, edges in edge_count.items():
            if c not in witnesses:
                raise EmbeddingError("a component with edges has no outer dart")
            if vertex_count[c] - edges + face_count[c] != 2:
                raise EulerViolation(
                    f"component has V={vertex_count[c]}, E={edges}, "
                    f"F={face_count[c]}; expected V - E + F = 2"
                )

    # -- darts and faces ----------------------------------------------------

    def head(self, dart: Dart) -> int:
        tail, e = dart
        u, v = self.edges[e]
        return v if tail == u else u

    def next_dart(self, dart: Dart) -> Dart:
        """Next dart of the face on the left of ``dart``."""
        v = self.head(dart)
        rot = self.rotation[v]
        return (v, rot[(self._position[(v, dart[1])] - 1) % len(rot)])

    def rotation_index(self, v: int, e: int) -> int:
        return self._position[(v, e)]

    @cached_property
    def outer_face_ids(self) -> FrozenSet[int]:
        return frozenset(self.face_of[d] for d in self.outer)

    @cached_property
    def face_vertex_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(t for t, _ in walk) for walk in self.faces]

    @cached_property
    def vertex_faces(self) -> Dict[int, Tuple[int, ...]]:
        result: Dict[int, set] = {v: set() for v in self.vertices}
        for f, verts in enumerate(self.face_vertex_sets):
            for v in verts:
                result[v].add(f)
        return {v: tuple(sorted(fs)) for v, fs in result.items()}

    @cached_property
    def outer_vertices(self) -> FrozenSet[int]:
        """Vertices on an outer face, isolated vertices included."""
        found = {v for v in self.vertices if not self.rotation[v]}
        for f in self.outer_face_ids:
            found |= self.face_vertex_sets[f]
        return frozenset(found)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.vertices))
        for e in sorted(self.edges):
            u, v = self.edges[e]
            graph.add_edge(u, v, eid=e)
        return graph

    def edge_between(self, u: int, v: int) -> int:
        return self.nx_graph[u][v]["eid"]

    def path_edges(self, path: Sequence[int]) -> List[int]:
        return [self.edge_between(a, b) for a, b in zip(path, path[1:])]

    def components(self) -> List[FrozenSet[int]]:
        comps = [frozenset(c) for c in nx.connected_components(self.nx_graph)]
        return sorted(comps, key=min)

    @property
    def is_connected(self) -> bool:
        return bool(self.vertices) and nx.is_connected(self.nx_graph)

    def outer_walk(self) -> List[Dart]:
        """Darts of the outer face, clockwise, starting at the witness dart."""
        if not self.is_connected:
            raise DisconnectedGraph("boundary walk needs a connected, non-null graph")
        if not self.outer:
            return []
        return list(self.faces[self.face_of[self.outer[0]]])

    def __repr__(self) -> str:
        return (
            f"EmbeddedPlanarGraph(V={len(self.vertices)}, E={len(self.edges)}, "
            f"F={len(self.faces)})"
        )


def trace_faces(G: EmbeddedPlanarGraph) -> List[Tuple[Dart, ...]]:
    """Every face of ``G`` as a closed walk of darts."""
    return list(G.faces)


def boundary_walk(G: EmbeddedPlanarGraph) -> List[Dart]:
    """The clockwise boundary walk of the outer face of a connected ``G``."""
    return G.outer_walk()


def walk_vertices(G: EmbeddedPlanarGraph) -> List[int]:
    """Vertices of the boundary walk; a lone vertex gives ``[v]``."""
    darts = G.outer_walk()
    if not darts:
        return [next(iter(G.vertices))]
    return [tail for tail, _ in darts]


# ---------------------------------------------------------------------------
# Terminals and the bounding curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Terminals:
    """Terminal sets with the clockwise order of the bounding curve"""

    S: FrozenSet[int]
    T: FrozenSet[int]
    boundary_order: Tuple[int, ...]

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.S | self.T

    def label(self, v: int) -> Optional[str]:
        if v in self.S and v in self.T:
            return "ST"
        if v in self.S:
            return "S"
        if v in self.T:
            return "T"
        return None


def _match_order(walk: Sequence[int], order: Sequence[int]) -> Optional[List[int]]:
    """Walk indices realising ``order`` as a cyclic subsequence of ``walk``.

    Indices are unwrapped (they may exceed ``len(walk)``) and increasing.
    """
    if not order:
        return []
    size = len(walk)
    for start in range(size):
        if walk[start] != order[0]:
            continue
        found = [start]
        j = start
        for b in order[1:]:
            j += 1
            while j < start + size and walk[j % size] != b:
                j += 1
            if j >= start + size:
                break
            found.append(j)
        else:
            return found
    return None


def _first_occurrence_order(G: EmbeddedPlanarGraph, wanted: FrozenSet[int]) -> List[int]:
    order: List[int] = []
    for comp in G.components():
        sub = comp & wanted
        if not sub:
            continue
        if len(comp) == 1:
            order.extend(sub)
            continue
        walk = [t for t, _ in G.faces[G.face_of[_witness_for(G, comp)]]]
        for v in walk:
            if v in sub and v not in order:
                order.append(v)
    return order


def _witness_for(G: EmbeddedPlanarGraph, comp: FrozenSet[int]) -> Dart:
    for dart in G.outer:
        if dart[0] in comp:
            return dart
    raise EmbeddingError("component has no outer dart")


def _order_is_valid(G: EmbeddedPlanarGraph, order: Sequence[int]) -> bool:
    for comp in G.components():
        sub = [v for v in order if v in comp]
        if len(sub) <= 1 or len(comp) == 1:
            continue
        walk = [t for t, _ in G.faces[G.face_of[_witness_for(G, comp)]]]
        if _match_order(walk, sub) is None:
            return False
    return True


def make_terminals(
    G: EmbeddedPlanarGraph,
    S: Iterable[int],
    T: Iterable[int],
    boundary_order: Optional[Sequence[int]] = None,
    strict: bool = True,
) -> Terminals:
    """Validate terminal sets against the drawing.

    With ``strict`` off, empty sides are allowed and an unusable boundary
    order is replaced by first-occurrence order along the outer walk.
    """
    S, T = frozenset(S), frozenset(T)
    if strict and (not S or not T):
        raise EmptyTerminalSide("S and T must both be nonempty")
    for v in sorted(S | T):
        if v not in G.vertices:
            raise EmbeddingError(f"terminal {v} is not a vertex")
        if v not in G.outer_vertices:
            raise TerminalNotOnOuterFace(f"terminal {v} is not on the outer face")

    wanted = S | T
    if boundary_order is not None:
        order = [int(v) for v in boundary_order]
        problem = None
        if len(order) != len(set(order)) or set(order) != wanted:
            problem = "boundary order must list every terminal exactly once"
        elif not _order_is_valid(G, order):
            problem = "boundary order does not follow the outer walk"
        if problem is None:
            return Terminals(S, T, tuple(order))
        if strict:
            raise BoundaryOrderError(problem)
        logger.debug("Replacing boundary order: %s", problem)
    return Terminals(S, T, tuple(_first_occurrence_order(G, wanted)))


def restrict_terminals(
    G: EmbeddedPlanarGraph, terminals: Terminals, S=None, T=None
) -> Terminals:
    """Terminals of a subdrawing, keeping the old order where it still fits."""
    S = terminals.S if S is None else frozenset(S)
    T = terminals.T if T is None else frozenset(T)
    S, T = S & G.vertices, T & G.vertices
    order = [v for v in terminals.boundary_order if v in S | T]
    if set(order) != S | T:
        order = None
    return make_terminals(G, S, T, order, strict=False)


def build_embedding(
    vertices: Iterable[int],
    edges: Dict[int, Tuple[int, int]],
    rotation: Dict[int, Sequence[int]],
    outer: Sequence[Dart],
    S: Iterable[int],
    T: Iterable[int],
    boundary_order: Optional[Sequence[int]] = None,
    coords: Optional[Dict[int, Tuple[float, float]]] = None,
) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    """Build and validate a drawing together with its terminals.

    Raises:
        LoopEdge, DuplicateEdge, RotationMismatch, UnknownEdge: bad edges
        EulerViolation: the rotation system is not a plane drawing
        TerminalNotOnOuterFace, BoundaryOrderError, EmptyTerminalSide
    """
    G = EmbeddedPlanarGraph(vertices, edges, rotation, outer, coords)
    terminals = make_terminals(G, S, T, boundary_order, strict=True)
    logger.debug("Built %r with |S|=%d |T|=%d", G, len(terminals.S), len(terminals.T))
    return G, terminals


def curve_from_order(G: EmbeddedPlanarGraph, order: Sequence[int]) -> "BoundaryCurve":
    """Bounding curve through the points of ``order``, with no S/T split.

    Certificates for disc linkage only fix the clockwise order of the curve
    points; their sides do not matter.

    Raises:
        BoundaryOrderError: repeated points, or an order the walk does not follow
        TerminalNotOnOuterFace: a point that is not on the outer face
    """
    order = [int(v) for v in order]
    if len(order) != len(set(order)):
        raise BoundaryOrderError("boundary order repeats a point")
    for v in order:
        if v not in G.vertices:
            raise EmbeddingError(f"boundary point {v} is not a vertex")
        if v not in G.outer_vertices:
            raise TerminalNotOnOuterFace(f"boundary point {v} is not on the outer face")
    return BoundaryCurve(G, Terminals(frozenset(order), frozenset(), tuple(order)))


class BoundaryCurve:
    """The bounding curve of a connected drawing.

    Boundary positions number the points of the curve: position ``2i`` is
    the terminal ``boundary_order[i]`` and position ``2i + 1`` is the open arc
    (gap) after it. Each gap lies in one region of the disc, bounded by the
    arc and by the walk segment between the two terminals' chosen walk
    occurrences. Regions of the disc are the inner faces plus these gaps.
    """

    def __init__(self, G: EmbeddedPlanarGraph, terminals: Terminals):
        if not G.is_connected:
            raise DisconnectedGraph("a bounding curve needs a connected graph")
        if not terminals.boundary_order:
            raise EmptyTerminalSide("the bounding curve has no terminals")
        self.graph = G
        self.terminals = terminals
        self.order: Tuple[int, ...] = tuple(terminals.boundary_order)
        darts = G.outer_walk()
        walk = [t for t, _ in darts] or [next(iter(G.vertices))]
        found = _match_order(walk, self.order)
        if found is None:
            raise BoundaryOrderError("boundary order does not follow the outer walk")
        start = found[0] % len(walk)
        self.darts: List[Dart] = darts[start:] + darts[:start]
        self.walk: List[int] = walk[start:] + walk[:start]
        self.occurrence: List[int] = [i - found[0] for i in found]
        self.m = len(self.order)
        self.size = 2 * self.m
        self.index = {v: i for i, v in enumerate(self.order)}

    # -- positions ----------------------------------------------------------

    def vertex_position(self, v: int) -> int:
        return 2 * self.index[v]

    def walk_index(self, v: int) -> int:
        return self.occurrence[self.index[v]]

    def incoming_dart(self, v: int) -> Optional[Dart]:
        if not self.darts:
            return None
        return self.darts[(self.walk_index(v) - 1) % len(self.darts)]

    def gap_range(self, i: int) -> Tuple[int, int]:
        start = self.occurrence[i]
        end = self.occurrence[i + 1] if i + 1 < self.m else len(self.walk)
        return start, end

    def gap_vertices(self, i: int) -> FrozenSet[int]:
        start, end = self.gap_range(i)
        size = len(self.walk)
        return frozenset(self.walk[j % size] for j in range(start, end + 1))

    def point_vertices(self, position: int) -> FrozenSet[int]:
        """Vertices a log must contain to attach to this boundary point."""
        if position % 2 == 0:
            return frozenset((self.order[position // 2],))
        return self.gap_vertices(position // 2)

    def positions_vertices(self, positions: Iterable[int]) -> FrozenSet[int]:
        found: set = set()
        for p in positions:
            found |= self.point_vertices(p)
        return frozenset(found)

    # -- regions ------------------------------------------------------------

    @cached_property
    def inner_faces(self) -> Tuple[int, ...]:
        return tuple(
            f for f in range(len(self.graph.faces)) if f not in self.graph.outer_face_ids
        )

    @cached_property
    def regions(self) -> Tuple[Region, ...]:
        return tuple(("face", f) for f in self.inner_faces) + tuple(
            ("gap", i) for i in range(self.m)
        )

    @cached_property
    def region_vertices(self) -> Dict[Region, FrozenSet[int]]:
        result: Dict[Region, FrozenSet[int]] = {
            ("face", f): self.graph.face_vertex_sets[f] for f in self.inner_faces
        }
        for i in range(self.m):
            result[("gap", i)] = self.gap_vertices(i)
        return result

    @cached_property
    def vertex_regions(self) -> Dict[int, Tuple[Region, ...]]:
        result: Dict[int, list] = {v: [] for v in self.graph.vertices}
        for region in self.regions:
            for v in self.region_vertices[region]:
                result[v].append(region)
        return {v: tuple(rs) for v, rs in result.items()}

    def interval(self, u: int, v: int) -> "Interval":
        """The clockwise interval from terminal ``u`` to terminal ``v``."""
        return Interval(self.vertex_position(u), self.vertex_position(v), self.size)

    def interval_vertices(self, interval: "Interval") -> List[int]:
        return [self.order[p // 2] for p in interval.positions if p % 2 == 0]


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """A closed clockwise arc of boundary positions ``start..end``."""

    start: int
    end: int
    size: int
    full: bool = False

    @cached_property
    def positions(self) -> Tuple[int, ...]:
        if self.full:
            return tuple((self.start + i) % self.size for i in range(self.size))
        length = (self.end - self.start) % self.size + 1
        return tuple((self.start + i) % self.size for i in range(length))

    @cached_property
    def interior(self) -> FrozenSet[int]:
        if self.full:
            return frozenset(self.positions)
        return frozenset(self.positions[1:-1])

    def __contains__(self, position: int) -> bool:
        return position in self.positions

    def __len__(self) -> int:
        return len(self.positions)


def point(position: int, size: int) -> Interval:
    return Interval(position, position, size)


def internally_disjoint(A: Interval, B: Interval) -> bool:
    return A.interior.isdisjoint(B.positions) and B.interior.isdisjoint(A.positions)


def _crosses(A: Interval, B: Interval, A2: Interval, B2: Interval) -> bool:
    blocked = set(A.positions) | set(B.positions)
    size = A.size
    anchor = min(blocked)
    run_of: Dict[int, int] = {}
    run, inside = -1, False
    for step in range(1, size + 1):
        p = (anchor + step) % size
        if p in blocked:
            inside = False
            continue
        if not inside:
            run, inside = run + 1, True
        run_of[p] = run
    runs_a = {run_of[p] for p in A2.positions if p in run_of}
    runs_b = {run_of[p] for p in B2.positions if p in run_of}
    return bool(runs_a) and bool(runs_b) and runs_a.isdisjoint(runs_b)


def crosses(A: Interval, B: Interval, A2: Interval, B2: Interval) -> bool:
    """True iff the pairs (A, B) and (A2, B2) interleave on the curve.

    Raises:
        NotInternallyDisjoint: if two of the four intervals overlap internally
    """
    for X, Y in combinations((A, B, A2, B2), 2):
        if not internally_disjoint(X, Y):
            raise NotInternallyDisjoint(f"{X} and {Y} share an internal point")
    return _crosses(A, B, A2, B2)


def _arc(A: Interval, B: Interval) -> Interval:
    return Interval(A.end, B.start, A.size)


def clockwise_arc(A: Interval, B: Interval) -> Interval:
    """The minimal clockwise arc from A to B, written [A->B]."""
    if A == B:
        raise IdenticalIntervals("[A->B] needs two distinct intervals")
    return _arc(A, B)


@dataclass(frozen=True)
class IntervalSystem:
    """Pairwise internally-disjoint intervals numbered clockwise."""

    intervals: Tuple[Interval, ...]
    size: int
    sides: Optional[Tuple[str, ...]] = None  # "S"/"T" for interval coverings

    def __post_init__(self):
        for A, B in combinations(self.intervals, 2):
            if not internally_disjoint(A, B):
                raise NotInternallyDisjoint(f"{A} and {B} share an internal point")

    def __len__(self) -> int:
        return len(self.intervals)

    def __getitem__(self, i: int) -> Interval:
        return self.intervals[i]


def interval_covering(curve: BoundaryCurve) -> IntervalSystem:
    """Greedy interval covering of S and T along the bounding curve.

    Maximal runs of same-side terminals become intervals; a terminal in both
    S and T closes the current run and opens the next one, so it is an end of
    both an S-interval and a T-interval. The result alternates S, T, S, ...
    starting with an S-interval.

    Raises:
        EmptyTerminalSide: if S or T is empty
    """
    terminals = curve.terminals
    if not terminals.S or not terminals.T:
        raise EmptyTerminalSide("an interval covering needs nonempty S and T")
    labels = [terminals.label(v) for v in curve.order]
    m = curve.m
    runs: List[Tuple[str, int, int]] = []  # (side, first index, last index)

    pure = [i for i, lab in enumerate(labels) if lab != "ST"]
    if not pure:
        if m == 1:
            runs = [("S", 0, 0), ("T", 0, 0)]
        elif m % 2 == 0:
            runs = [("S" if i % 2 == 0 else "T", i, (i + 1) % m) for i in range(m)]
        else:
            runs = [("S", 0, 0)]
            runs += [("T" if i % 2 == 0 else "S", i, i + 1) for i in range(m - 1)]
            runs.append(("T", m - 1, m - 1))
    else:
        first = pure[0]
        side, start, end = labels[first], first, first
        for step in range(1, m):
            i = (first + step) % m
            lab = labels[i]
            if lab == side:
                end = i
            elif lab == "ST":
                runs.append((side, start, i))
                side = "T" if side == "S" else "S"
                start = end = i
            else:
                runs.append((side, start, end))
                side, start, end = lab, i, i
        if runs and runs[0][0] == side:
            runs[0] = (side, start, runs[0][2])
        else:
            runs.append((side, start, end))
        while runs[0][0] != "S":
            runs.append(runs.pop(0))

    intervals = tuple(Interval(2 * a, 2 * b, curve.size) for _, a, b in runs)
    sides = tuple(side for side, _, _ in runs)
    logger.debug("Interval covering of size %d", len(intervals))
    return IntervalSystem(intervals, curve.size, sides)


# ---------------------------------------------------------------------------
# Demand functions
# ---------------------------------------------------------------------------


@dataclass
class DemandFunction:
    """Requested path counts ``values[(i, j)]`` between intervals, i < j."""

    m: int
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def get(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.values.get((i, j), 0)

    @property
    def total(self) -> int:
        return sum(self.values.values())

    def positive_pairs(self) -> List[Tuple[int, int]]:
        return sorted(pair for pair, d in self.values.items() if d > 0)

    def validate(self) -> None:
        """Raise InvalidDemand unless d(p, r) d(q, s) = 0 for all p<q<r<s."""
        for (i, j), d in self.values.items():
            if not (0 <= i < j < self.m):
                raise InvalidDemand(f"demand index pair ({i}, {j}) is out of range")
            if d < 0:
                raise InvalidDemand(f"demand ({i}, {j}) is negative")
        for (p, r), (q, s) in combinations(self.positive_pairs(), 2):
            if p < q < r < s or q < p < s < r:
                raise InvalidDemand(
                    f"pairs ({p}, {r}) and ({q}, {s}) cross and are both demanded"
                )

    def crossing_sum(self, system: IntervalSystem, a: int, b: int) -> int:
        """Sum of demands over pairs (I_i, I_j) crossing the points (a, b)."""
        pa, pb = point(a, system.size), point(b, system.size)
        return sum(
            d
            for (i, j), d in self.values.items()
            if d > 0 and _crosses(system[i], system[j], pa, pb)
        )


# ---------------------------------------------------------------------------
# Distances and subdrawings
# ---------------------------------------------------------------------------


def graph_distance(G: EmbeddedPlanarGraph, X: Iterable[int], Y: Iterable[int]):
    """Length of a shortest X-Y path, or ``math.inf`` when none exists.

    Raises:
        EmptySet: if X or Y is empty
    """
    X, Y = set(X), set(Y)
    if not X or not Y:
        raise EmptySet("distance needs two nonempty vertex sets")
    if X & Y:
        return 0
    lengths = nx.multi_source_dijkstra_path_length(G.nx_graph, X & G.vertices)
    reached = [lengths[y] for y in Y if y in lengths]
    return min(reached) if reached else math.inf


def ball(G: EmbeddedPlanarGraph, X: Iterable[int], radius) -> FrozenSet[int]:
    """Vertices within distance ``radius`` of X."""
    sources = set(X) & G.vertices
    if radius < 0 or not sources:
        return frozenset()
    return frozenset(
        nx.multi_source_dijkstra_path_length(G.nx_graph, sources, cutoff=radius)
    )


def shortest_set_path(
    G: EmbeddedPlanarGraph,
    X: Iterable[int],
    Y: Iterable[int],
    within: Optional[Iterable[int]] = None,
    cutoff: Optional[int] = None,
) -> Optional[List[int]]:
    """A shortest path from X to Y, optionally inside a vertex subset."""
    graph = G.nx_graph if within is None else G.nx_graph.subgraph(set(within))
    sources = {v for v in X if v in graph}
    targets = {v for v in Y if v in graph}
    if not sources or not targets:
        return None
    common = sources & targets
    if common:
        return [min(common)]
    lengths = nx.multi_source_dijkstra_path_length(graph, sources, cutoff=cutoff)
    reached = [(d, v) for v, d in lengths.items() if v in targets]
    if not reached:
        return None
    _, target = min(reached)
    _, path = nx.multi_source_dijkstra(graph, sources, target=target)
    return list(path)


def loop_erase(walk: Sequence[int]) -> List[int]:
    path: List[int] = []
    where: Dict[int, int] = {}
    for v in walk:
        if v in where:
            for u in path[where[v] + 1 :]:
                del where[u]
            del path[where[v] + 1 :]
        else:
            where[v] = len(path)
            path.append(v)
    return path


def induced(G: EmbeddedPlanarGraph, vertices: Iterable[int]) -> EmbeddedPlanarGraph:
    """The subdrawing induced on ``vertices``.

    Faces of G glued across deleted edges form the faces of the result, so
    each surviving component keeps the outer face it sees. Components that
    end up enclosed by an inner face contain no outer-face vertex of G and
    are dropped.
    """
    keep = frozenset(vertices) & G.vertices
    edges = {e: uv for e, uv in G.edges.items() if uv[0] in keep and uv[1] in keep}
    parent = list(range(len(G.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (u, v) in G.edges.items():
        if e not in edges:
            a, b = find(G.face_of[(u, e)]), find(G.face_of[(v, e)])
            if a != b:
                parent[max(a, b)] = min(a, b)
    outer_classes = {find(f) for f in G.outer_face_ids}

    graph = G.nx_graph.subgraph(keep)
    survivors: set = set()
    outer: List[Dart] = []
    for comp in sorted((frozenset(c) for c in nx.connected_components(graph)), key=min):
        darts = [
            (v, e) for v in sorted(comp) for e in G.rotation[v] if e in edges
        ]
        if not darts:
            (v,) = comp
            faces = G.vertex_faces[v]
            if not faces or any(find(f) in outer_classes for f in faces):
                survivors |= comp
            continue
        witness = next(
            (d for d in darts if find(G.face_of[d]) in outer_classes), None
        )
        if witness is None:
            continue
        survivors |= comp
        outer.append(witness)

    edges = {e: uv for e, uv in edges.items() if uv[0] in survivors}
    rotation = {
        v: tuple(e for e in G.rotation[v] if e in edges) for v in survivors
    }
    return EmbeddedPlanarGraph(survivors, edges, rotation, outer, G.coords)


# ---------------------------------------------------------------------------
# Contraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Preimage:
    """The connected piece of G that contracted onto one vertex."""

    vertices: FrozenSet[int]
    edges: FrozenSet[int]


@dataclass
class ContractionMap:
    graph: EmbeddedPlanarGraph
    terminals: Terminals
    eta: Dict[int, Preimage]
    image: Dict[int, int]


class _Contractor:
    """Mutable rotation system used while contracting."""

    def __init__(self, G: EmbeddedPlanarGraph):
        self.rotation = {v: list(G.rotation[v]) for v in G.vertices}
        self.ends = dict(G.edges)
        self.parent = {v: v for v in G.vertices}
        self.witness = list(G.outer)

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def _next(self, dart: Dart) -> Dart:
        tail, e = dart
        a, b = self.ends[e]
        head = b if tail == a else a
        rot = self.rotation[head]
        return (head, rot[(rot.index(e) - 1) % len(rot)])

    def _retarget(self, e: int) -> None:
        moved = []
        for dart in self.witness:
            seen = set()
            while dart is not None and dart[1] == e:
                if dart in seen:
                    dart = None
                    break
                seen.add(dart)
                dart = self._next(dart)
            if dart is not None:
                moved.append(dart)
        self.witness = moved

    def delete(self, e: int) -> None:
        self._retarget(e)
        a, b = self.ends.pop(e)
        self.rotation[a].remove(e)
        self.rotation[b].remove(e)

    def contract(self, e: int) -> None:
        a, b = self.ends[e]
        for other in [
            x for x in self.rotation[a] if x != e and set(self.ends[x]) == {a, b}
        ]:
            self.delete(other)
        self._retarget(e)
        ra, rb = self.rotation[a], self.rotation[b]
        ia, ib = ra.index(e), rb.index(e)
        merged = ra[ia + 1 :] + ra[:ia] + rb[ib + 1 :] + rb[:ib]
        del self.ends[e]
        keep, gone = min(a, b), max(a, b)
        for x in merged:
            self.ends[x] = tuple(keep if y in (a, b) else y for y in self.ends[x])
        self.rotation[keep] = merged
        del self.rotation[gone]
        self.parent[gone] = keep
        self.witness = [(keep if t in (a, b) else t, x) for t, x in self.witness]

    def drop_parallels(self) -> None:
        survivor: Dict[FrozenSet[int], int] = {}
        for e in sorted(self.ends):
            key = frozenset(self.ends[e])
            if key in survivor:
                self.delete(e)
            else:
                survivor[key] = e


def contract(
    G: EmbeddedPlanarGraph, terminals: Terminals, F: Iterable[int]
) -> ContractionMap:
    """Contract the edge set F in the drawing.

    Loops are deleted and each parallel class keeps its smallest edge id. A
    merged vertex keeps the smallest original id and surviving edges keep
    their ids.

    Raises:
        UnknownEdge: if F names an edge not in G
    """
    F = sorted(set(F))
    for e in F:
        if e not in G.edges:
            raise UnknownEdge(f"cannot contract unknown edge {e}")
    work = _Contractor(G)
    for e in F:
        if e in work.ends:
            work.contract(e)
    work.drop_parallels()

    image = {v: work.find(v) for v in G.vertices}
    classes: Dict[int, set] = {}
    for v, root in image.items():
        classes.setdefault(root, set()).add(v)
    inner_edges: Dict[int, set] = {root: set() for root in classes}
    for e in F:
        u, v = G.edges[e]
        inner_edges[image[u]].add(e)
    eta = {
        root: Preimage(frozenset(vs), frozenset(inner_edges[root]))
        for root, vs in classes.items()
    }

    rotation = {v: tuple(rot) for v, rot in work.rotation.items()}
    coords = {v: G.coords[v] for v in classes} if G.coords else None
    H = EmbeddedPlanarGraph(classes, work.ends, rotation, work.witness, coords)

    order = [image[v] for v in terminals.boundary_order]
    order = [v for i, v in enumerate(order) if v != order[i - 1]] if len(order) > 1 else order
    S2 = {image[v] for v in terminals.S}
    T2 = {image[v] for v in terminals.T}
    if len(order) != len(set(order)):
        order = None
    lifted = make_terminals(H, S2, T2, order, strict=False)
    logger.debug("Contracted %d edges: %r -> %r", len(F), G, H)
    return ContractionMap(H, lifted, eta, image)


# ---------------------------------------------------------------------------
# Depth and pruning
# ---------------------------------------------------------------------------


def depth(G: EmbeddedPlanarGraph) -> Dict[int, int]:
    """Vertex depth: alternations of vertex and region needed to reach the
    outer face, computed by layering the vertex-face incidence graph."""
    incidence = nx.Graph()
    incidence.add_nodes_from(("v", v) for v in G.vertices)
    for f, verts in enumerate(G.face_vertex_sets):
        incidence.add_edges_from((("v", v), ("f", f)) for v in verts)
    seeds = {("v", v) for v in G.outer_vertices}
    lengths = nx.multi_source_dijkstra_path_length(incidence, seeds)
    return {v: lengths[("v", v)] // 2 for v in G.vertices}


def depth_bound(k: int, c: int) -> int:
    """Pruning depth for deciding k pairwise (c+1)-distant paths."""
    return math.floor(Fraction(c * (k - 1), 2) + 1)


def prune(
    G: EmbeddedPlanarGraph, terminals: Terminals, bound: int
) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    """Delete every vertex deeper than ``bound``."""
    depths = depth(G)
    H = induced(G, (v for v, d in depths.items() if d <= bound))
    logger.debug("Pruned at depth %d: %r -> %r", bound, G, H)
    return H, restrict_terminals(H, terminals)


# ---------------------------------------------------------------------------
# Drawings from coordinates
# ---------------------------------------------------------------------------


def rotation_from_coords(
    vertices: Iterable[int],
    edges: Dict[int, Tuple[int, int]],
    coords: Dict[int, Tuple[float, float]],
) -> Dict[int, Tuple[int, ...]]:
    """Counterclockwise rotations from a straight-line drawing."""
    incident: Dict[int, list] = {v: [] for v in vertices}
    for e, (u, v) in edges.items():
        incident[u].append((v, e))
        incident[v].append((u, e))
    rotation = {}
    for v, items in incident.items():
        cx, cy = coords[v]
        items.sort(key=lambda item: math.atan2(coords[item[0]][1] - cy, coords[item[0]][0] - cx))
        rotation[v] = tuple(e for _, e in items)
    return rotation


def _signed_area(coords: Dict[int, Tuple[float, float]], cycle: Sequence[int]) -> float:
    area = 0.0
    for i, v in enumerate(cycle):
        x1, y1 = coords[v]
        x2, y2 = coords[cycle[(i + 1) % len(cycle)]]
        area += x1 * y2 - x2 * y1
    return area / 2.0


def outer_darts_from_coords(
    vertices: Iterable[int],
    edges: Dict[int, Tuple[int, int]],
    rotation: Dict[int, Sequence[int]],
    coords: Dict[int, Tuple[float, float]],
) -> List[Dart]:
    """One outer dart per component: the face with the most negative area."""
    faces, _ = _trace(edges, rotation)
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges.values())
    component_of = {}
    for index, comp in enumerate(nx.connected_components(graph)):
        for v in comp:
            component_of[v] = index
    best: Dict[int, Tuple[float, Dart]] = {}
    for walk in faces:
        comp = component_of[walk[0][0]]
        area = _signed_area(coords, [t for t, _ in walk])
        candidate = (area, min(walk))
        if comp not in best or candidate < best[comp]:
            best[comp] = candidate
    return [dart for _, dart in sorted(best.values(), key=lambda item: item[1])]
