"""Coarse Menger pipeline for graphs with S and T on the outer face.

``main_solve`` returns either k+1 S-T paths that are pairwise at distance
more than c, or at most k connected blobs of bounded total diameter meeting
every S-T path. ``decide_far_paths`` answers the exact decision question
after pruning deep vertices.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from boom_engine import BoomSearch
from config import config
from disc_linkage import Linkage, pair_paths, solve_disc_linkage, solve_pairs
from embed_core import (
    BoundaryCurve,
    ContractionMap,
    DemandFunction,
    EmbeddedPlanarGraph,
    IntervalSystem,
    Terminals,
    _arc,
    ball,
    contract,
    depth_bound,
    induced,
    interval_covering,
    loop_erase,
    make_terminals,
    prune,
    restrict_terminals,
    shortest_set_path,
    walk_vertices,
)
from errors import (
    BoundViolation,
    EmptyTerminalSide,
    HypothesisViolated,
    InternalInconsistency,
    InvalidDemand,
    NoGapPath,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Blob:
    """A connected subgraph; ``diameter`` is measured in the whole graph."""

    vertices: FrozenSet[int]
    edges: FrozenSet[int]
    diameter: int


@dataclass
class Verdict:
    kind: str  # "yes" or "no"
    paths: List[List[int]] = field(default_factory=list)
    blobs: List[Blob] = field(default_factory=list)

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def total_diameter(self) -> int:
        return sum(b.diameter for b in self.blobs)

    @property
    def total_edges(self) -> int:
        return len(frozenset().union(*(b.edges for b in self.blobs)))


@dataclass
class DecideResult:
    answer: bool
    verdict: Verdict
    depth_bound: Optional[int]
    exact: bool


def _require(condition: bool, message: str) -> None:
    if config.CHECK_BOUNDS and not condition:
        raise BoundViolation(message)


def make_blob(
    G: EmbeddedPlanarGraph, vertices: Iterable[int], edges: Optional[Iterable[int]] = None
) -> Blob:
    """Blob over ``vertices``; edges default to the induced ones."""
    vertices = frozenset(vertices)
    if edges is None:
        edges = (e for e, (u, v) in G.edges.items() if u in vertices and v in vertices)
    diameter = 0
    for v in vertices:
        lengths = nx.single_source_shortest_path_length(G.nx_graph, v)
        diameter = max(diameter, max(lengths[u] for u in vertices))
    return Blob(vertices, frozenset(edges), diameter)


def _far(G: EmbeddedPlanarGraph, c: int, paths: Sequence[Sequence[int]]) -> bool:
    for p, q in combinations(paths, 2):
        if not ball(G, p, c).isdisjoint(q):
            return False
    return True


# ---------------------------------------------------------------------------
# Boundary paths
# ---------------------------------------------------------------------------


def _walk_segment(curve: BoundaryCurve, start: int, end: int) -> List[int]:
    size = len(curve.walk)
    if end < start:
        end += size
    return loop_erase([curve.walk[i % size] for i in range(start, end + 1)])


def gap_paths(curve: BoundaryCurve, covering: IntervalSystem) -> List[List[int]]:
    """P_i runs along the boundary walk from I_i's clockwise end to I_{i+1}.

    Raises:
        NoGapPath: if consecutive intervals meet at a shared point but
            their anchor vertices differ
    """
    paths = []
    n = len(covering)
    for i in range(n):
        here, there = covering[i], covering[(i + 1) % n]
        u = curve.order[here.end // 2]
        v = curve.order[there.start // 2]
        if u == v:
            paths.append([u])
            continue
        if here.end % 2 or there.start % 2:
            raise NoGapPath(f"intervals {i} and {(i + 1) % n} are not vertex-anchored")
        paths.append(_walk_segment(curve, curve.walk_index(u), curve.walk_index(v)))
    return paths


def transition_paths(curve: BoundaryCurve) -> List[List[int]]:
    """One S-T path per change of side along the boundary walk.

    Every occurrence of a terminal on the walk is read in turn, so a cut
    vertex visited twice is seen twice. A vertex in both S and T counts as
    the side just seen followed by the other side and contributes a
    zero-length path. Every other change of side gives the loop-erased
    stretch of the walk between the two occurrences. The number of changes
    is even.
    """
    terminals = curve.terminals
    walk = curve.walk
    marks = [(i, terminals.label(v)) for i, v in enumerate(walk) if terminals.label(v)]
    if not marks:
        return []
    pure = [n for n, (_, lab) in enumerate(marks) if lab != "ST"]
    first = pure[0] if pure else 0
    entries: List[Tuple[int, str]] = []  # (walk index, side)
    side = marks[first][1] if pure else "T"
    for step in range(len(marks)):
        i, label = marks[(first + step) % len(marks)]
        if label == "ST":
            other = "T" if side == "S" else "S"
            entries.extend([(i, side), (i, other)])
            side = other
        else:
            side = label
            entries.append((i, side))

    paths = []
    for (i, x), (j, y) in zip(entries, entries[1:] + entries[:1]):
        if x == y:
            continue
        if i == j:
            paths.append([walk[i]])
        else:
            paths.append(_walk_segment(curve, i, j))
    return paths


# ---------------------------------------------------------------------------
# Far-apart filtering
# ---------------------------------------------------------------------------


@dataclass
class FarApart:
    kind: str  # "yes" or "no"
    paths: List[List[int]] = field(default_factory=list)
    blobs: List[Blob] = field(default_factory=list)


class _FarApartSolver:
    def __init__(self, G: EmbeddedPlanarGraph, c: int, paths: Sequence[Sequence[int]]):
        self.G = G
        self.c = c
        self.paths = [list(p) for p in paths]
        self.vertex_sets = [frozenset(p) for p in paths]
        self._balls: Dict[int, FrozenSet[int]] = {}

    def close(self, i: int, j: int) -> bool:
        if i not in self._balls:
            self._balls[i] = ball(self.G, self.paths[i], self.c)
        return not self._balls[i].isdisjoint(self.vertex_sets[j])

    def far_family(self, members: Sequence[int]) -> bool:
        return all(not self.close(i, j) for i, j in combinations(members, 2))

    def log(self, i: int, j: int) -> List[int]:
        return shortest_set_path(self.G, self.vertex_sets[i], self.vertex_sets[j])

    def solve(self, run: List[int], k: int, cyclic: bool, excluded: FrozenSet[int]):
        """("yes", members) with k+1 far active paths or ("no", blobs)."""
        active = [i for i in run if self.vertex_sets[i].isdisjoint(excluded)]
        if not active:
            return "no", []
        count = len(active)

        def consecutive(a: int, b: int) -> bool:
            return b - a == 1 or (cyclic and count > 2 and a == 0 and b == count - 1)

        for a, b in combinations(range(count), 2):
            if not consecutive(a, b) and self.close(active[a], active[b]):
                return self._split(active, a, b, k, excluded)
        return self._base(active, k, cyclic)

    def _base(self, active: List[int], k: int, cyclic: bool):
        count = len(active)

        def linked(i: int) -> bool:
            j = i + 1
            if j == count:
                if not cyclic or count < 3:
                    return False
                j = 0
            return self.close(active[i], active[j])

        links = [linked(i) for i in range(count)]
        ring = cyclic and count >= 3 and all(links)
        chains: List[List[int]] = []
        if ring:
            chains = [list(range(count))]
        else:
            start = next(i for i in range(count) if not links[i - 1])
            current = [start]
            for step in range(1, count):
                i = (start + step) % count
                if links[(i - 1) % count]:
                    current.append(i)
                else:
                    chains.append(current)
                    current = [i]
            chains.append(current)

        independent = [chain[i] for chain in chains for i in range(0, len(chain), 2)]
        if ring:
            independent = independent[: count // 2]
        if len(independent) >= k + 1:
            return "yes", [active[i] for i in independent[: k + 1]]

        blobs = []
        for chain in chains:
            for i in range(0, len(chain), 2):
                if i + 1 < len(chain):
                    log = self.log(active[chain[i]], active[chain[i + 1]])
                    blobs.append(make_blob(self.G, log, self.G.path_edges(log)))
                else:
                    blobs.append(make_blob(self.G, [self.paths[active[chain[i]]][0]], ()))
        return "no", blobs

    def _side(self, side: List[int], k: int, excluded: FrozenSet[int]):
        """Largest far family found on one side (up to k) and a cover."""
        best: List[int] = []
        for kk in range(1, k + 1):
            kind, found = self.solve(side, kk, False, excluded)
            if kind == "no":
                if not best:
                    active = [i for i in side if self.vertex_sets[i].isdisjoint(excluded)]
                    best = active[:1]
                return best, found
            best = found
        return best, None

    def _split(self, active, a, b, k, excluded):
        log = self.log(active[a], active[b])
        region = ball(self.G, log, self.c)
        blob = make_blob(self.G, region)
        blocked = excluded | region
        side1 = active[a + 1 : b]
        side2 = active[b + 1 :] + active[:a]
        logger.debug("Far-apart split at paths %d and %d", active[a], active[b])

        far1, cover1 = self._side(side1, k, blocked)
        if cover1 is None:
            return "yes", far1
        far2, cover2 = self._side(side2, k, blocked)
        if cover2 is None:
            return "yes", far2
        for far, other in ((far1, side2), (far2, side1)):
            if len(far) >= k:
                for extra in other + [active[a], active[b]]:
                    if extra not in far and self.far_family(far[:k] + [extra]):
                        return "yes", far[:k] + [extra]
        union = list(far1)
        for i in far2:
            if self.far_family(union + [i]):
                union.append(i)
        if len(union) >= k + 1:
            return "yes", union[: k + 1]
        return "no", list(cover1) + list(cover2) + [blob]


def far_apart_filter(
    G: EmbeddedPlanarGraph, c: int, k: int, paths: Sequence[Sequence[int]]
) -> FarApart:
    """Pick k+1 pairwise (c+1)-distant paths, or cover all with small blobs.

    ``paths`` is a cyclic family: P_i and P_{i+1} are consecutive, as are
    the last and the first. Blobs have diameter at most 3c.

    Raises:
        InternalInconsistency: if a returned family is not pairwise far
        BoundViolation: if the blob count or diameter bound fails
    """
    if not paths:
        return FarApart("no")
    if k <= 0:
        return FarApart("yes", [list(paths[0])])
    solver = _FarApartSolver(G, c, paths)
    kind, found = solver.solve(list(range(len(paths))), k, True, frozenset())
    if kind == "yes":
        if len(found) != k + 1 or not solver.far_family(found):
            raise InternalInconsistency("far-apart filter returned close paths")
        return FarApart("yes", [solver.paths[i] for i in found])
    if len(paths) % 2 == 0:
        _require(
            len(found) <= max(1, math.floor(5 * k / 2 - 1)),
            f"{len(found)} far-apart blobs for k={k}",
        )
    _require(all(b.diameter <= 3 * c for b in found), "far-apart blob wider than 3c")
    logger.debug("Far-apart filter: %d blobs cover %d paths", len(found), len(paths))
    return FarApart("no", blobs=found)


# ---------------------------------------------------------------------------
# Menger on the contracted graph
# ---------------------------------------------------------------------------


def vertex_disjoint_menger(
    G: EmbeddedPlanarGraph, S: Iterable[int], T: Iterable[int], want: int
) -> Tuple[Optional[List[List[int]]], Optional[FrozenSet[int]]]:
    """``want`` vertex-disjoint S-T paths, or a vertex cut smaller than want."""
    S, T = set(S), set(T)
    graph = G.nx_graph.copy()
    source, sink = "source", "sink"
    graph.add_edges_from((source, s) for s in S)
    graph.add_edges_from((t, sink) for t in T)
    try:
        found = list(nx.node_disjoint_paths(graph, source, sink, cutoff=want))
    except nx.NetworkXNoPath:
        found = []
    if len(found) >= want:
        paths = []
        for path in found[:want]:
            inner = path[1:-1]
            first = max(i for i, v in enumerate(inner) if v in S)
            last = next(i for i in range(first, len(inner)) if inner[i] in T)
            paths.append(inner[first : last + 1])
        return paths, None
    if not found:
        return None, frozenset()
    return None, frozenset(nx.minimum_node_cut(graph, source, sink))


def _choose_demand(
    curve: BoundaryCurve,
    covering: IntervalSystem,
    cm: ContractionMap,
    paths: List[List[int]],
) -> Optional[DemandFunction]:
    """Pick one S end and one T end per contracted path so the demand is valid."""
    terminals = curve.terminals
    owner = {}
    for index, interval in enumerate(covering.intervals):
        side = covering.sides[index]
        for v in curve.interval_vertices(interval):
            owner[(side, v)] = index

    options = []
    for path in paths:
        first, last = path[0], path[-1]
        if first not in cm.terminals.S:
            first, last = last, first
        sources = sorted(terminals.S & cm.eta[first].vertices, key=curve.vertex_position)
        sinks = sorted(terminals.T & cm.eta[last].vertices, key=curve.vertex_position)
        options.append([(owner[("S", s)], owner[("T", t)]) for s in sources for t in sinks])

    chosen: List[Tuple[int, int]] = []

    def extend(h: int) -> Optional[DemandFunction]:
        if h == len(options):
            values: Dict[Tuple[int, int], int] = {}
            for i, j in chosen:
                key = (min(i, j), max(i, j))
                values[key] = values.get(key, 0) + 1
            demand = DemandFunction(len(covering), values)
            try:
                demand.validate()
            except InvalidDemand:
                return None
            return demand
        for option in options[h]:
            chosen.append(option)
            result = extend(h + 1)
            chosen.pop()
            if result is not None:
                return result
        return None

    return extend(0)


def bounded_cover(
    curve: BoundaryCurve, c: int, k: int, covering: IntervalSystem
) -> Verdict:
    """Far paths or at most k blobs with at most 8kn^2c edges in total.

    Shortest booms of length <= k between every two of the covering
    intervals and the arcs between consecutive ones are contracted; Menger's
    theorem on the result gives either a small cut, whose preimages are the
    blobs, or k+1 disjoint paths, which fix a demand that the disc solver
    then links far apart in G.

    Raises:
        InternalInconsistency: if the disc solver contradicts the contraction
        BoundViolation: if the edge bound fails
    """
    G = curve.graph
    n = len(covering) // 2
    family = []
    for i in range(len(covering)):
        family.append(covering[i].positions)
        family.append(_arc(covering[i], covering[(i + 1) % len(covering)]).positions)

    search = BoomSearch(curve, c)
    F = set()
    for J1, J2 in combinations(family, 2):
        boom = search.between(J1, J2, k)
        if boom is not None:
            F |= boom.edges(curve)
    logger.debug("Bounded cover: n=%d, contracting %d boom edges", n, len(F))

    cm = contract(G, curve.terminals, F)
    paths, cut = vertex_disjoint_menger(cm.graph, cm.terminals.S, cm.terminals.T, k + 1)
    if paths is None:
        blobs = [
            make_blob(G, cm.eta[x].vertices, cm.eta[x].edges) for x in sorted(cut)
        ]
        verdict = Verdict("no", blobs=blobs)
        _require(len(blobs) <= k, f"{len(blobs)} cut blobs for k={k}")
        _require(
            verdict.total_edges <= 8 * k * n * n * c,
            f"bounded cover used {verdict.total_edges} edges > 8kn^2c",
        )
        return verdict

    demand = _choose_demand(curve, covering, cm, paths)
    if demand is None:
        raise InternalInconsistency("no labelling of the contracted paths is a demand")
    result = solve_disc_linkage(curve, c, covering, demand)
    if not isinstance(result, Linkage):
        raise InternalInconsistency("disc solver refused a demand realised after contraction")
    return Verdict("yes", paths=result.all_paths())


# ---------------------------------------------------------------------------
# Cut vertices on the boundary walk
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryPart:
    """Walk indices start..end (cyclic) and the terminal side they carry."""

    start: int
    end: int
    side: Optional[str]  # "S", "T", "ST" (a lone X vertex in both) or None


def _side_of(vertices: Iterable[int], S, T) -> Optional[str]:
    has_s = any(v in S for v in vertices)
    has_t = any(v in T for v in vertices)
    if has_s and has_t:
        return "ST"
    return "S" if has_s else "T" if has_t else None


def _unguarded_repeat(walk: Sequence[int], X) -> Optional[Tuple[int, int]]:
    """Cyclically consecutive occurrences i < j of a vertex with no X strictly
    between them (j may exceed len(walk))."""
    size = len(walk)
    seen: Dict[int, List[int]] = {}
    for i, v in enumerate(walk):
        seen.setdefault(v, []).append(i)
    for v in walk:
        occurrences = seen[v]
        if len(occurrences) < 2:
            continue
        ring = occurrences + [occurrences[0] + size]
        for i, j in zip(ring, ring[1:]):
            if all(walk[h % size] not in X for h in range(i + 1, j)):
                return i, j
    return None


def partition_boundary(
    walk: Sequence[int], X: Iterable[int], S: Iterable[int], T: Iterable[int]
) -> List[BoundaryPart]:
    """Split the boundary walk at the X vertices.

    Raises:
        HypothesisViolated: if some repeated vertex has no X vertex strictly
            between two of its occurrences, or a stretch free of X holds
            both S and T
        BoundViolation: if X occurs more than 2|X| times or the parts
            exceed 4|X|
    """
    X, S, T = set(X), set(S), set(T)
    if _unguarded_repeat(walk, X) is not None:
        raise HypothesisViolated("a repeated boundary vertex is not separated by X")
    size = len(walk)
    hits = [i for i, v in enumerate(walk) if v in X]
    _require(len(hits) <= 2 * len(X), f"X occurs {len(hits)} times on the walk")

    if not hits:
        side = _side_of(walk, S, T)
        if side == "ST":
            raise HypothesisViolated("a stretch of the walk without X holds S and T")
        return [BoundaryPart(0, size - 1, side)] if side else []

    parts: List[BoundaryPart] = []
    for index, h in enumerate(hits):
        parts.append(BoundaryPart(h, h, _side_of([walk[h]], S, T)))
        nxt = hits[(index + 1) % len(hits)] + (size if index + 1 == len(hits) else 0)
        if nxt - h > 1:
            stretch = [walk[i % size] for i in range(h + 1, nxt)]
            side = _side_of(stretch, S, T)
            if side == "ST":
                raise HypothesisViolated("a stretch of the walk without X holds S and T")
            parts.append(BoundaryPart((h + 1) % size, (nxt - 1) % size, side))
    _require(len(parts) <= 4 * len(X), f"{len(parts)} boundary parts for |X|={len(X)}")

    kept = [p for p in parts if p.side is not None]
    merged: List[BoundaryPart] = []
    for part in kept:
        if merged and merged[-1].side == part.side and part.side != "ST":
            merged[-1] = BoundaryPart(merged[-1].start, part.end, part.side)
        else:
            merged.append(part)
    if len(merged) > 1 and merged[0].side == merged[-1].side != "ST":
        last = merged.pop()
        merged[0] = BoundaryPart(last.start, merged[0].end, last.side)
    return merged


@dataclass(frozen=True)
class _Split:
    """A side split off at a cut vertex that stands in for its terminals."""

    vertex: int
    piece: FrozenSet[int]  # the split-off side, cut vertex included
    ends: FrozenSet[int]  # terminals of that side inside the piece
    S: FrozenSet[int]  # terminal sets before the split
    T: FrozenSet[int]


def _joins(path: Sequence[int], S, T) -> bool:
    return (path[0] in S and path[-1] in T) or (path[0] in T and path[-1] in S)


def _lift_split(G: EmbeddedPlanarGraph, split: _Split, path: List[int]) -> List[int]:
    if _joins(path, split.S, split.T):
        return path
    v = split.vertex
    if path[0] == v:
        return shortest_set_path(G, split.ends, {v}, within=split.piece)[:-1] + path
    if path[-1] == v:
        return path + shortest_set_path(G, {v}, split.ends, within=split.piece)[1:]
    raise InternalInconsistency(f"cannot extend a path through cut vertex {v}")


def cutpoints_solve(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    c: int,
    k: int,
    X: Iterable[int],
) -> Verdict:
    """Solve when every S-T stretch of the boundary walk meets X.

    Cut vertices repeated on the walk with no X vertex between two of their
    occurrences are split off first. A split-off side without terminals is
    dropped; otherwise the cut vertex joins S (or T) in place of that side.

    Raises:
        HypothesisViolated: if some S-T stretch of the walk avoids X
        BoundViolation: if the blobs exceed 32k|X|^2c edges
    """
    original = G
    X = frozenset(X) & G.vertices
    S, T = terminals.S, terminals.T
    splits: List[_Split] = []
    while True:
        walk = walk_vertices(G)
        repeat = _unguarded_repeat(walk, X)
        if repeat is None:
            break
        i, j = repeat
        v = walk[i]
        rest = G.nx_graph.subgraph(G.vertices - {v})
        side: set = set()
        for h in range(i + 1, j):
            side |= nx.node_connected_component(rest, walk[h % len(walk)])
        has_s, has_t = not side.isdisjoint(S), not side.isdisjoint(T)
        if has_s and has_t:
            raise HypothesisViolated(f"S and T both hang off cut vertex {v} without X")
        G = induced(G, G.vertices - side)
        if has_s or has_t:
            own = S if has_s else T
            splits.append(
                _Split(v, frozenset(side | {v}), frozenset(own & side), S, T)
            )
            if has_s:
                S = S | {v}
            else:
                T = T | {v}
        S, T, X = S & G.vertices, T & G.vertices, X & G.vertices
        logger.debug("Split at cut vertex %d; %d vertices remain", v, len(G.vertices))

    if not S or not T:
        raise EmptyTerminalSide("cut-vertex splitting emptied a terminal side")
    terminals = make_terminals(G, S, T, strict=False)
    partition_boundary(walk_vertices(G), X, S, T)
    curve = BoundaryCurve(G, terminals)
    covering = interval_covering(curve)
    verdict = bounded_cover(curve, c, k, covering)

    if not verdict.is_yes:
        _require(
            verdict.total_edges <= 32 * k * len(X) ** 2 * c,
            f"cut-vertex stage used {verdict.total_edges} edges > 32k|X|^2c",
        )
        return verdict
    lifted = []
    for path in verdict.paths:
        for split in reversed(splits):
            path = _lift_split(original, split, path)
        lifted.append(path)
    return Verdict("yes", paths=lifted)


# ---------------------------------------------------------------------------
# Far paths or blobs
# ---------------------------------------------------------------------------


def _lift_contracted_path(
    G: EmbeddedPlanarGraph, cm: ContractionMap, path: List[int], terminals: Terminals
) -> List[int]:
    """Expand a path of the contracted graph through the preimages it visits."""
    if not (path[0] in cm.terminals.S and path[-1] in cm.terminals.T):
        path = path[::-1]
    lifted: List[int] = []
    entry = terminals.S & cm.eta[path[0]].vertices
    for index, w in enumerate(path):
        piece = cm.eta[w].vertices
        if index + 1 < len(path):
            a, b = G.edges[cm.graph.edge_between(w, path[index + 1])]
            leave, arrive = (a, b) if cm.image[a] == w else (b, a)
            targets = {leave}
        else:
            targets = terminals.T & piece
        lifted.extend(shortest_set_path(G, entry, targets, within=piece))
        if index + 1 < len(path):
            entry = {arrive}
    return lifted


def _solve_connected(
    G: EmbeddedPlanarGraph, terminals: Terminals, k: int, c: int
) -> Verdict:
    S, T = terminals.S, terminals.T
    if k <= 0:
        return Verdict("yes", paths=[shortest_set_path(G, S, T)])
    if S == T and len(S) == 1:
        return Verdict("no", blobs=[make_blob(G, S, ())])

    curve = BoundaryCurve(G, terminals)
    paths = transition_paths(curve)
    logger.debug("Main solve: %d transition paths, k=%d, c=%d", len(paths), k, c)
    filtered = far_apart_filter(G, c, k, paths)
    if filtered.kind == "yes":
        return Verdict("yes", paths=filtered.paths)

    F = frozenset().union(*(b.edges for b in filtered.blobs))
    cm = contract(G, terminals, F)
    X = {cm.image[v] for b in filtered.blobs for v in b.vertices}
    inner = cutpoints_solve(cm.graph, cm.terminals, c, k, X)
    if inner.is_yes:
        return Verdict(
            "yes", paths=[_lift_contracted_path(G, cm, p, terminals) for p in inner.paths]
        )
    blobs = []
    for blob in inner.blobs:
        vertices = frozenset().union(*(cm.eta[x].vertices for x in blob.vertices))
        edges = blob.edges.union(*(cm.eta[x].edges for x in blob.vertices))
        blobs.append(make_blob(G, vertices, edges))
    return Verdict("no", blobs=blobs)


def _solve_components(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    components: List[FrozenSet[int]],
    k: int,
    c: int,
) -> Verdict:
    """Combine components: paths in different components are infinitely far."""
    found: List[List[int]] = []
    blobs: List[Blob] = []
    for comp in components:
        H = induced(G, comp)
        local = restrict_terminals(H, terminals)
        best: List[List[int]] = []
        for kk in range(0, k + 1):
            verdict = _solve_connected(H, local, kk, c)
            if not verdict.is_yes:
                blobs.extend(verdict.blobs)
                break
            best = verdict.paths
            if len(found) + len(best) >= k + 1:
                return Verdict("yes", paths=(found + best)[: k + 1])
        found.extend(best)
    return Verdict("no", blobs=blobs)


def main_solve(
    G: EmbeddedPlanarGraph, terminals: Terminals, k: int, c: int
) -> Verdict:
    """k+1 pairwise (c+1)-distant S-T paths, or at most k blobs meeting all.

    Args:
        G: the drawing, S and T on its outer face
        terminals: S, T and their boundary order
        k: the blob budget
        c: distance parameter (paths must be at distance >= c + 1)

    Raises:
        EmptyTerminalSide: if S or T is empty
        BoundViolation: if the blobs' total diameter exceeds 200k^3c
    """
    if not terminals.S or not terminals.T:
        raise EmptyTerminalSide("S and T must both be nonempty")
    relevant = [
        comp
        for comp in G.components()
        if not comp.isdisjoint(terminals.S) and not comp.isdisjoint(terminals.T)
    ]
    if not relevant:
        verdict = Verdict("no")
    elif len(relevant) == 1:
        H = G if relevant[0] == G.vertices else induced(G, relevant[0])
        verdict = _solve_connected(H, restrict_terminals(H, terminals), k, c)
    else:
        verdict = _solve_components(G, terminals, relevant, k, c)

    if verdict.is_yes:
        logger.info("Main solve: YES with %d paths", len(verdict.paths))
    else:
        _require(
            verdict.total_diameter <= 200 * k**3 * c,
            f"blob diameters sum to {verdict.total_diameter} > 200k^3c",
        )
        logger.info("Main solve: NO with %d blobs", len(verdict.blobs))
    return verdict


# ---------------------------------------------------------------------------
# Exact decision
# ---------------------------------------------------------------------------


def _matchings(points: List[int], S) -> Iterable[List[Tuple[int, int]]]:
    """Non-crossing perfect matchings of cyclically ordered points, each pair
    oriented (S end, T end)."""
    if not points:
        yield []
        return
    first = points[0]
    for index in range(1, len(points), 2):
        partner = points[index]
        if (first in S) == (partner in S):
            continue
        pair = (first, partner) if first in S else (partner, first)
        for inside in _matchings(points[1:index], S):
            for outside in _matchings(points[index + 1 :], S):
                yield [pair] + inside + outside


def _component_matchings(groups, S) -> Iterable[List[List[Tuple[int, int]]]]:
    if not groups:
        yield []
        return
    for head in _matchings(groups[0], S):
        for tail in _component_matchings(groups[1:], S):
            yield [head] + tail


def _search_pairings(
    H: EmbeddedPlanarGraph, terminals: Terminals, k: int, c: int, limit: int
) -> Tuple[Optional[List[List[int]]], bool]:
    """Exhaust endpoint choices and non-crossing pairings for k far paths.

    Returns the paths found (or None) and whether the search was complete.
    """
    S, T = terminals.S, terminals.T
    shared = sorted(S & T)
    sources, sinks = sorted(S - T), sorted(T - S)
    curves = {}
    comp_of = {}
    for index, comp in enumerate(H.components()):
        if comp.isdisjoint(S | T):
            continue
        Hc = induced(H, comp)
        local = restrict_terminals(Hc, terminals)
        if local.boundary_order:
            curves[index] = BoundaryCurve(Hc, local)
        for v in comp:
            comp_of[v] = index

    budget = limit
    for z in range(min(k, len(shared)), -1, -1):
        for zero in combinations(shared, z):
            if not _far(H, c, [[v] for v in zero]):
                continue
            singles = [[v] for v in zero]
            r = k - z
            if r == 0:
                return singles, True
            forbidden = ball(H, zero, c)
            free_s = [s for s in sources if s not in forbidden]
            free_t = [t for t in sinks if t not in forbidden]
            for chosen_s in combinations(free_s, r):
                for chosen_t in combinations(free_t, r):
                    groups = {}
                    for v in chosen_s + chosen_t:
                        groups.setdefault(comp_of[v], []).append(v)
                    ordered = [
                        sorted(vs, key=curves[index].vertex_position)
                        for index, vs in sorted(groups.items())
                    ]
                    keys = sorted(groups)
                    for matching in _component_matchings(ordered, S):
                        if budget <= 0:
                            return None, False
                        budget -= 1
                        paths = []
                        for index, pairs in zip(keys, matching):
                            result = solve_pairs(curves[index], c, pairs, avoid=zero)
                            if not isinstance(result, Linkage):
                                break
                            paths.extend(pair_paths(result, curves[index], pairs))
                        else:
                            return singles + paths, True
    return None, True


def decide_far_paths(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    k: int,
    c: int,
    pairing_limit: Optional[int] = None,
) -> DecideResult:
    """Decide whether k pairwise (c+1)-distant S-T paths exist.

    Vertices deeper than the pruning bound are deleted first; main_solve on
    the rest with k-1 then answers. A NO whose blobs are all narrower than
    c + 1 is exact. Otherwise endpoint pairings are searched with the disc
    solver, up to ``pairing_limit`` attempts.
    """
    if k <= 0:
        return DecideResult(True, Verdict("yes"), None, True)
    bound = depth_bound(k, c)
    H, pruned = prune(G, terminals, bound)
    verdict = main_solve(H, pruned, k - 1, c)
    if verdict.is_yes:
        return DecideResult(True, verdict, bound, True)
    if c == 0 or all(b.diameter <= c for b in verdict.blobs):
        return DecideResult(False, verdict, bound, True)

    limit = config.PAIRING_LIMIT if pairing_limit is None else pairing_limit
    paths, complete = _search_pairings(H, pruned, k, c, limit)
    if paths is not None:
        return DecideResult(True, Verdict("yes", paths=paths), bound, True)
    if not complete:
        logger.warning(
            "Pairing search stopped after %d attempts; NO is not certified exact", limit
        )
    return DecideResult(False, verdict, bound, complete)
