"""Greedy far-linkage solver in a disc.

Paths are added one at a time. Each new path joins the unmet interval pair
with the smallest clockwise arc and runs along the boundary of what remains
after deleting the c-neighbourhood of the paths already placed. When no such
path exists a boom obstruction is extracted instead.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from boom_engine import ObstructionCert, boom_obstruction
from config import config
from embed_core import (
    BoundaryCurve,
    DemandFunction,
    Interval,
    IntervalSystem,
    _arc,
    _crosses,
    ball,
    induced,
    loop_erase,
    point,
)
from errors import CrossingPairs, InternalInconsistency, InvalidDemand

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass
class Linkage:
    """Paths for each demanded interval pair (indices into ``system``)"""

    paths: Dict[Pair, List[List[int]]]
    system: IntervalSystem
    demand: DemandFunction

    def all_paths(self) -> List[List[int]]:
        return linkage_paths(self)


def linkage_paths(linkage: Linkage) -> List[List[int]]:
    return [path for pair in sorted(linkage.paths) for path in linkage.paths[pair]]


def validate_demand(system: IntervalSystem, demand: DemandFunction) -> None:
    if demand.m != len(system):
        raise InvalidDemand(
            f"demand is over {demand.m} intervals but the system has {len(system)}"
        )
    demand.validate()


def crossing_demand_sum(
    system: IntervalSystem, demand: DemandFunction, a: int, b: int
) -> int:
    """Total demand over pairs (I_i, I_j) that cross the points (a, b)."""
    return demand.crossing_sum(system, a, b)


def minimal_side_path(
    curve: BoundaryCurve,
    avoid: Iterable[int],
    A: Interval,
    B: Interval,
    side: str = "forward",
) -> Optional[List[int]]:
    """The A-B path of G - avoid closest to the arc [A->B].

    Starting from the vertex of A nearest the arc, the boundary of the
    remaining drawing is followed clockwise until it first reaches B; the
    path runs from the last A vertex on that stretch. ``side="backward"``
    hugs [B->A] instead.

    Returns:
        The path from A to B, or None if avoid separates them
    """
    if side == "backward":
        path = minimal_side_path(curve, avoid, B, A)
        return None if path is None else path[::-1]

    G = curve.graph
    avoid = frozenset(avoid)
    starts = [v for v in curve.interval_vertices(A) if v not in avoid]
    targets = {v for v in curve.interval_vertices(B) if v not in avoid}
    common = [v for v in starts if v in targets]
    if common:
        return [common[-1]]
    if not starts or not targets:
        return None

    H = induced(G, G.vertices - avoid)
    start_set = set(starts)
    for x in reversed(starts):
        if x not in H.vertices or not H.rotation[x]:
            continue
        incoming = curve.incoming_dart(x)
        rot = G.rotation[x]
        index = G.rotation_index(x, incoming[1])
        first = None
        for step in range(1, len(rot) + 1):
            e = rot[(index - step) % len(rot)]
            if e in H.edges:
                first = (x, e)
                break
        walk = [x]
        dart = first
        reached = False
        while True:
            v = H.head(dart)
            walk.append(v)
            if v in targets:
                reached = True
                break
            dart = H.next_dart(dart)
            if dart == first:
                break
        if not reached:
            continue
        last = max(i for i, v in enumerate(walk[:-1]) if v in start_set)
        return loop_erase(walk[last:])
    return None


def check_pushed(
    curve: BoundaryCurve, avoid: FrozenSet[int], path: List[int]
) -> None:
    """Debug check that a new path runs along the boundary of G - avoid.

    Raises:
        InternalInconsistency: if some path vertex is enclosed by the rest
    """
    G = curve.graph
    touched = set(avoid)
    for v in path:
        for f in G.vertex_faces[v]:
            if f in G.outer_face_ids or not touched.isdisjoint(G.face_vertex_sets[f]):
                break
        else:
            raise InternalInconsistency(f"path vertex {v} is not on the pushed boundary")


def solve_disc_linkage(
    curve: BoundaryCurve,
    c: int,
    system: IntervalSystem,
    demand: DemandFunction,
    avoid: Iterable[int] = (),
) -> Optional[Union[Linkage, ObstructionCert]]:
    """Find a linkage for ``demand`` or a boom obstruction.

    Args:
        curve: bounding curve of a connected drawing
        c: paths must be pairwise at distance >= c + 1
        system: intervals whose ends are curve vertices
        demand: path counts between interval pairs
        avoid: vertices no path may come within distance c of; with a
            nonempty avoid set a failed search returns None instead of an
            obstruction

    Raises:
        InvalidDemand: if the demand is not a demand function
        InternalInconsistency: if neither a path nor an obstruction exists
    """
    validate_demand(system, demand)
    G = curve.graph
    blocked = ball(G, avoid, c)
    paths: Dict[Pair, List[List[int]]] = {pair: [] for pair in demand.positive_pairs()}

    while True:
        unmet = [pair for pair in paths if len(paths[pair]) < demand.get(*pair)]
        if not unmet:
            logger.debug("Linkage complete with %d paths", demand.total)
            return Linkage(paths, system, demand)
        i, j = min(unmet, key=lambda p: (len(_arc(system[p[0]], system[p[1]])), p))
        placed = [v for group in paths.values() for path in group for v in path]
        Z = ball(G, placed, c) | blocked
        path = minimal_side_path(curve, Z, system[i], system[j])
        if path is None:
            if blocked:
                return None
            cert = boom_obstruction(curve, c, system, demand)
            if cert is None:
                raise InternalInconsistency(
                    f"pair ({i}, {j}) has no path and no boom obstruction exists"
                )
            return cert
        if config.CHECK_PUSHED:
            check_pushed(curve, Z, path)
        paths[(i, j)].append(path)


def pairs_demand(
    curve: BoundaryCurve, pairs: List[Pair]
) -> Tuple[IntervalSystem, DemandFunction]:
    """Point intervals at the pair endpoints with demand 1 per pair.

    Raises:
        InvalidDemand: if an endpoint is not a distinct curve vertex
        CrossingPairs: if two pairs cross
    """
    ends = [v for pair in pairs for v in pair]
    if len(set(ends)) != len(ends) or any(v not in curve.index for v in ends):
        raise InvalidDemand("pair endpoints must be distinct vertices of the curve")
    for (s1, t1), (s2, t2) in combinations(pairs, 2):
        points = [point(curve.vertex_position(v), curve.size) for v in (s1, t1, s2, t2)]
        if _crosses(*points):
            raise CrossingPairs(f"pairs ({s1}, {t1}) and ({s2}, {t2}) cross")

    ordered = sorted(ends, key=curve.vertex_position)
    system = IntervalSystem(
        tuple(point(curve.vertex_position(v), curve.size) for v in ordered), curve.size
    )
    where = {v: i for i, v in enumerate(ordered)}
    values = {}
    for s, t in pairs:
        i, j = sorted((where[s], where[t]))
        values[(i, j)] = 1
    return system, DemandFunction(len(ordered), values)


def solve_pairs(
    curve: BoundaryCurve,
    c: int,
    pairs: List[Pair],
    avoid: Iterable[int] = (),
) -> Optional[Union[Linkage, ObstructionCert]]:
    """Link each (s_i, t_i) by pairwise (c+1)-distant paths.

    Raises:
        InvalidDemand: if an endpoint is not a distinct curve vertex
        CrossingPairs: if two pairs cross
    """
    system, demand = pairs_demand(curve, pairs)
    return solve_disc_linkage(curve, c, system, demand, avoid)


def pair_paths(linkage: Linkage, curve: BoundaryCurve, pairs: List[Pair]) -> List[List[int]]:
    """Paths of a ``solve_pairs`` linkage, each oriented from s_i to t_i."""
    by_ends = {}
    for path in linkage_paths(linkage):
        by_ends[path[0]] = path
        by_ends[path[-1]] = path[::-1]
    return [by_ends[s] for s, _ in pairs]
