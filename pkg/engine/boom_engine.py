"""Logs, booms and boom obstructions.

A log is a path of length at most c. A boom is a chain of logs where each
consecutive pair touches a common region (an inner face or a gap region of
the disc). A boom joins two boundary points when it attaches to both, or
when it is empty and the two points share a region.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from embed_core import (
    BoundaryCurve,
    DemandFunction,
    IntervalSystem,
    Region,
    ball,
    shortest_set_path,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a certificate or structure check"""

    ok: bool
    failure: Optional[str] = None  # first failing condition
    detail: str = ""

    @classmethod
    def passed(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def failed(cls, failure: str, detail: str = "") -> "CheckResult":
        return cls(False, failure, detail)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Boom:
    """Logs Q_1..Q_t with the regions linking consecutive logs.

    For t = 0 ``links`` holds the single region shared by ``a`` and ``b``.
    ``a`` and ``b`` are boundary positions.
    """

    logs: Tuple[Tuple[int, ...], ...]
    links: Tuple[Region, ...]
    a: int
    b: int

    @property
    def length(self) -> int:
        return len(self.logs)

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(v for log in self.logs for v in log)

    def edges(self, curve: BoundaryCurve) -> Set[int]:
        found: Set[int] = set()
        for log in self.logs:
            found.update(curve.graph.path_edges(log))
        return found


@dataclass(frozen=True)
class ObstructionCert:
    a: int
    b: int
    boom: Boom
    crossing_sum: int


def _point_regions(curve: BoundaryCurve, position: int) -> Tuple[Region, ...]:
    """Regions a boundary point lies in; vertex points lie in none."""
    if position % 2 == 0:
        return ()
    return (("gap", position // 2),)


def _attaches(curve: BoundaryCurve, boom: Boom, position: int) -> bool:
    return bool(curve.point_vertices(position) & boom.vertices)


def validate_boom(curve: BoundaryCurve, c: int, boom: Boom) -> CheckResult:
    """Check every log, link and endpoint condition of ``boom``.

    Args:
        curve: bounding curve of the drawing the boom lives in
        c: maximum log length
        boom: the boom to check

    Returns:
        CheckResult naming the first failing condition, if any
    """
    G = curve.graph
    known = set(curve.regions)
    for index, log in enumerate(boom.logs):
        if not log or any(v not in G.vertices for v in log):
            return CheckResult.failed("LogNotPath", f"log {index} has unknown vertices")
        if len(set(log)) != len(log):
            return CheckResult.failed("LogNotPath", f"log {index} repeats a vertex")
        for u, v in zip(log, log[1:]):
            if not G.nx_graph.has_edge(u, v):
                return CheckResult.failed("LogNotPath", f"log {index}: {u}-{v} is not an edge")
        if len(log) - 1 > c:
            return CheckResult.failed(
                "LogTooLong", f"log {index} has length {len(log) - 1} > {c}"
            )

    for region in boom.links:
        if region not in known:
            return CheckResult.failed("UnknownRegion", f"{region} is not a region")

    if boom.length == 0:
        if len(boom.links) != 1:
            return CheckResult.failed("NoCommonRegion", "an empty boom names one region")
        region = boom.links[0]
        for position in (boom.a, boom.b):
            if region not in _point_regions(curve, position):
                return CheckResult.failed(
                    "NoCommonRegion", f"point {position} is not in region {region}"
                )
        return CheckResult.passed()

    if len(boom.links) != boom.length - 1:
        return CheckResult.failed(
            "LinkRegionNotIncident",
            f"{boom.length} logs need {boom.length - 1} links, got {len(boom.links)}",
        )
    for index, region in enumerate(boom.links):
        incident = curve.region_vertices[region]
        if incident.isdisjoint(boom.logs[index]) or incident.isdisjoint(
            boom.logs[index + 1]
        ):
            return CheckResult.failed(
                "LinkRegionNotIncident",
                f"{region} does not touch logs {index} and {index + 1}",
            )
    for position in (boom.a, boom.b):
        if not (0 <= position < curve.size) or not _attaches(curve, boom, position):
            return CheckResult.failed(
                "EndpointNotAttached", f"boom does not attach to point {position}"
            )
    return CheckResult.passed()


class BoomSearch:
    """Breadth-first search for shortest booms over regions.

    A region r reaches r' in one log iff some vertex incident with r is
    within distance c of a vertex incident with r'. Reach sets are cached,
    so one instance serves every query on the same curve and c.
    """

    def __init__(self, curve: BoundaryCurve, c: int):
        self.curve = curve
        self.c = c
        self._reach: Dict[Region, Tuple[Region, ...]] = {}

    def regions_near(self, vertices: Iterable[int]) -> Set[Region]:
        near: Set[Region] = set()
        for v in ball(self.curve.graph, vertices, self.c):
            near.update(self.curve.vertex_regions[v])
        return near

    def _neighbours(self, region: Region) -> Tuple[Region, ...]:
        if region not in self._reach:
            found = self.regions_near(self.curve.region_vertices[region])
            self._reach[region] = tuple(sorted(found))
        return self._reach[region]

    def _anchor(self, positions: Sequence[int], vertices: FrozenSet[int]) -> int:
        return min(p for p in positions if self.curve.point_vertices(p) & vertices)

    def between(
        self, A: Iterable[int], B: Iterable[int], cap: int
    ) -> Optional[Boom]:
        """Shortest boom of length <= cap joining a point of A to a point of B."""
        A, B = sorted(set(A)), sorted(set(B))
        if cap < 0 or not A or not B:
            return None
        shared_gaps = [p for p in A if p in B and p % 2 == 1]
        if shared_gaps:
            p = shared_gaps[0]
            return Boom((), (("gap", p // 2),), p, p)
        if cap < 1:
            return None

        G = self.curve.graph
        ends_a = self.curve.positions_vertices(A)
        ends_b = self.curve.positions_vertices(B)
        direct = shortest_set_path(G, ends_a, ends_b, cutoff=self.c)
        if direct is not None and len(direct) - 1 <= self.c:
            vertices = frozenset(direct)
            return Boom(
                (tuple(direct),),
                (),
                self._anchor(A, vertices),
                self._anchor(B, vertices),
            )

        targets = self.regions_near(ends_b)
        frontier = sorted(self.regions_near(ends_a))
        parent: Dict[Region, Optional[Region]] = {r: None for r in frontier}
        level = 1
        while frontier and level + 1 <= cap:
            hits = [r for r in frontier if r in targets]
            if hits:
                return self._rebuild(hits[0], parent, ends_a, ends_b, A, B)
            level += 1
            following = []
            for region in frontier:
                for nxt in self._neighbours(region):
                    if nxt not in parent:
                        parent[nxt] = region
                        following.append(nxt)
            frontier = following
        return None

    def _rebuild(self, last, parent, ends_a, ends_b, A, B) -> Boom:
        chain: List[Region] = []
        region = last
        while region is not None:
            chain.append(region)
            region = parent[region]
        chain.reverse()

        G = self.curve.graph
        incident = self.curve.region_vertices
        stops = [ends_a] + [incident[r] for r in chain] + [ends_b]
        logs = []
        for here, there in zip(stops, stops[1:]):
            log = shortest_set_path(G, here, there, cutoff=self.c)
            logs.append(tuple(log))
        boom = Boom(tuple(logs), tuple(chain), 0, 0)
        vertices = boom.vertices
        return Boom(
            boom.logs, boom.links, self._anchor(A, vertices), self._anchor(B, vertices)
        )


def boom_between(
    curve: BoundaryCurve,
    c: int,
    A: Iterable[int],
    B: Iterable[int],
    cap: int,
    search: Optional[BoomSearch] = None,
) -> Optional[Boom]:
    """Shortest boom (length <= cap) joining some point of A to some point of B."""
    return (search or BoomSearch(curve, c)).between(A, B, cap)


def shortest_boom(
    curve: BoundaryCurve, c: int, a: int, b: int, cap: int
) -> Optional[Boom]:
    """Shortest boom joining boundary positions a and b, if one has length <= cap."""
    return boom_between(curve, c, (a,), (b,), cap)


def boom_obstruction(
    curve: BoundaryCurve, c: int, system: IntervalSystem, demand: DemandFunction
) -> Optional[ObstructionCert]:
    """Scan boundary point pairs for a boom shorter than the demand crossing it.

    Pairs are scanned in lexicographic order of boundary positions and the
    first violated pair is returned.

    Raises:
        InvalidDemand: if the demand is not a demand function
    """
    demand.validate()
    search = BoomSearch(curve, c)
    for a in range(curve.size):
        for b in range(a + 1, curve.size):
            total = demand.crossing_sum(system, a, b)
            if total < 1:
                continue
            boom = search.between((a,), (b,), total - 1)
            if boom is not None:
                logger.debug(
                    "Obstruction at (%d, %d): boom %d < demand %d",
                    a,
                    b,
                    boom.length,
                    total,
                )
                return ObstructionCert(a, b, boom, total)
    return None
