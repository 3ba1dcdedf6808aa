"""Brute-force oracles and certificate checkers.

The oracles enumerate paths exhaustively and are meant for small drawings
only. The checkers never raise on a bad certificate; they return a
CheckResult naming the first failing condition.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.connectivity import local_node_connectivity

from boom_engine import CheckResult, ObstructionCert, validate_boom
from coarse_menger import Blob, Verdict
from config import config
from disc_linkage import Linkage, validate_demand
from embed_core import (
    BoundaryCurve,
    DemandFunction,
    EmbeddedPlanarGraph,
    IntervalSystem,
    Terminals,
    ball,
    depth_bound,
    prune,
)
from errors import CapExceeded, InvalidDemand

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def enumerate_st_paths(
    G: EmbeddedPlanarGraph,
    S: Iterable[int],
    T: Iterable[int],
    cap: Optional[int] = None,
    minimal: bool = True,
) -> List[Path]:
    """Every S-T path of G, each listed once.

    In minimal mode only paths whose interior avoids S and T are listed,
    plus a zero-length path at each vertex of both S and T. Every S-T path
    contains a minimal one, so either list serves far-family and separation
    questions.

    Raises:
        CapExceeded: if more than ``cap`` paths exist
    """
    cap = config.ORACLE_PATH_CAP if cap is None else cap
    S, T = set(S), set(T)
    adjacency = {v: sorted(G.nx_graph[v]) for v in G.vertices}
    found: Dict[Path, None] = {}

    def record(path: List[int]) -> None:
        key = tuple(path)
        if not minimal and path[0] > path[-1]:
            key = key[::-1]
        found.setdefault(key, None)
        if len(found) > cap:
            raise CapExceeded(f"more than {cap} S-T paths")

    def extend(path: List[int], on_path: set) -> None:
        for w in adjacency[path[-1]]:
            if w in on_path:
                continue
            if w in T:
                record(path + [w])
                if minimal:
                    continue
            if minimal and w in S:
                continue
            on_path.add(w)
            path.append(w)
            extend(path, on_path)
            path.pop()
            on_path.discard(w)

    for v in sorted(S & T):
        record([v])
    for s in sorted(S - T) if minimal else sorted(S):
        extend([s], {s})
    return list(found)


def exists_far_family(
    G: EmbeddedPlanarGraph, c: int, k: int, paths: Sequence[Sequence[int]]
) -> Optional[List[List[int]]]:
    """k+1 of ``paths`` that are pairwise at distance more than c, if any."""
    if k < 0:
        return []
    if not paths:
        return None
    balls = [ball(G, p, c) for p in paths]
    compatible = nx.Graph()
    compatible.add_nodes_from(range(len(paths)))
    for i, j in combinations(range(len(paths)), 2):
        if balls[i].isdisjoint(paths[j]):
            compatible.add_edge(i, j)
    for clique in nx.find_cliques(compatible):
        if len(clique) >= k + 1:
            return [list(paths[i]) for i in sorted(clique)[: k + 1]]
    return None


def oracle_far_paths(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    count: int,
    c: int,
    vertex_cap: Optional[int] = None,
    path_cap: Optional[int] = None,
) -> Optional[List[List[int]]]:
    """``count`` pairwise (c+1)-distant S-T paths by exhaustive search.

    Raises:
        CapExceeded: if G is too large for exhaustive search
    """
    vertex_cap = config.ORACLE_VERTEX_CAP if vertex_cap is None else vertex_cap
    if len(G.vertices) > vertex_cap:
        raise CapExceeded(f"{len(G.vertices)} vertices exceed the oracle cap {vertex_cap}")
    if count <= 0:
        return []
    paths = enumerate_st_paths(G, terminals.S, terminals.T, path_cap)
    return exists_far_family(G, c, count - 1, paths)


def max_disjoint_paths(G: EmbeddedPlanarGraph, S: Iterable[int], T: Iterable[int]) -> int:
    """Maximum number of vertex-disjoint S-T paths (max-flow)."""
    graph = G.nx_graph.copy()
    graph.add_edges_from(("source", s) for s in S)
    graph.add_edges_from((t, "sink") for t in T)
    if "source" not in graph or "sink" not in graph:
        return 0
    if not nx.has_path(graph, "source", "sink"):
        return 0
    return local_node_connectivity(graph, "source", "sink")


def exists_linkage(
    curve: BoundaryCurve,
    c: int,
    system: IntervalSystem,
    demand: DemandFunction,
    cap: Optional[int] = None,
) -> Optional[Dict[Tuple[int, int], List[List[int]]]]:
    """A linkage for ``demand`` found by exhaustive search, if one exists.

    Raises:
        CapExceeded: if the candidate paths exceed ``cap``
    """
    cap = config.ORACLE_PATH_CAP if cap is None else cap
    G = curve.graph
    pairs = demand.positive_pairs()
    candidates: Dict[Tuple[int, int], List[List[int]]] = {}
    total = 0
    for i, j in pairs:
        A = set(curve.interval_vertices(system[i]))
        B = set(curve.interval_vertices(system[j]))
        options = [[v] for v in sorted(A & B)]
        for a in sorted(A - B):
            for b in sorted(B - A):
                for path in nx.all_simple_paths(G.nx_graph, a, b):
                    if A.isdisjoint(path[1:]) and B.isdisjoint(path[:-1]):
                        options.append(path)
                        total += 1
                        if total > cap:
                            raise CapExceeded(f"more than {cap} candidate linkage paths")
        candidates[(i, j)] = options

    slots = [pair for pair in pairs for _ in range(demand.get(*pair))]
    chosen: List[List[int]] = []
    balls: List[frozenset] = []

    def place(index: int, start: int) -> bool:
        if index == len(slots):
            return True
        pair = slots[index]
        first = start if index > 0 and slots[index - 1] == pair else 0
        for option_index in range(first, len(candidates[pair])):
            path = candidates[pair][option_index]
            if any(not b.isdisjoint(path) for b in balls):
                continue
            chosen.append(path)
            balls.append(ball(G, path, c))
            if place(index + 1, option_index + 1):
                return True
            chosen.pop()
            balls.pop()
        return False

    if not place(0, 0):
        return None
    result: Dict[Tuple[int, int], List[List[int]]] = {}
    for pair, path in zip(slots, chosen):
        result.setdefault(pair, []).append(path)
    return result


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------


def _path_problem(G: EmbeddedPlanarGraph, path: Sequence[int]) -> Optional[CheckResult]:
    if not path:
        return CheckResult.failed("NotAPath", "empty path")
    unknown = [v for v in path if v not in G.vertices]
    if unknown:
        return CheckResult.failed("UnknownVertex", f"vertex {unknown[0]} is not in G")
    if len(set(path)) != len(path):
        return CheckResult.failed("NotAPath", f"path {list(path)} repeats a vertex")
    for u, v in zip(path, path[1:]):
        if not G.nx_graph.has_edge(u, v):
            return CheckResult.failed("NotAPath", f"{u}-{v} is not an edge")
    return None


def _too_close(
    G: EmbeddedPlanarGraph, c: int, paths: Sequence[Sequence[int]]
) -> Optional[CheckResult]:
    for (i, p), (j, q) in combinations(enumerate(paths), 2):
        if not ball(G, p, c).isdisjoint(q):
            return CheckResult.failed(
                "DistanceTooSmall", f"paths {i} and {j} are within distance {c}"
            )
    return None


def check_yes(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    k: int,
    c: int,
    paths: Sequence[Sequence[int]],
) -> CheckResult:
    """k+1 S-T paths, pairwise at distance at least c+1."""
    if len(paths) != k + 1:
        return CheckResult.failed("WrongPathCount", f"expected {k + 1}, got {len(paths)}")
    S, T = terminals.S, terminals.T
    for index, path in enumerate(paths):
        problem = _path_problem(G, path)
        if problem:
            return problem
        if not ((path[0] in S and path[-1] in T) or (path[0] in T and path[-1] in S)):
            return CheckResult.failed(
                "EndpointsNotTerminals", f"path {index} does not join S to T"
            )
    return _too_close(G, c, paths) or CheckResult.passed()


def _diameter(G: EmbeddedPlanarGraph, vertices) -> int:
    best = 0
    for v in vertices:
        lengths = nx.single_source_shortest_path_length(G.nx_graph, v)
        best = max(best, max(lengths.get(u, float("inf")) for u in vertices))
    return best


def check_no(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    k: int,
    c: int,
    blobs: Sequence[Blob],
) -> CheckResult:
    """At most k connected blobs, total diameter <= 200k^3c, meeting every
    S-T path."""
    if len(blobs) > k:
        return CheckResult.failed("TooManyBlobs", f"{len(blobs)} blobs for k={k}")
    for index, blob in enumerate(blobs):
        unknown = [v for v in blob.vertices if v not in G.vertices]
        if unknown:
            return CheckResult.failed("UnknownVertex", f"blob {index} has vertex {unknown[0]}")
        missing = [e for e in blob.edges if e not in G.edges]
        if missing:
            return CheckResult.failed("UnknownEdge", f"blob {index} has edge {missing[0]}")
        piece = nx.Graph()
        piece.add_nodes_from(blob.vertices)
        for e in blob.edges:
            u, v = G.edges[e]
            if u not in blob.vertices or v not in blob.vertices:
                return CheckResult.failed(
                    "BlobNotConnected", f"edge {e} leaves blob {index}"
                )
            piece.add_edge(u, v)
        if not blob.vertices or not nx.is_connected(piece):
            return CheckResult.failed("BlobNotConnected", f"blob {index} is not connected")
        actual = _diameter(G, blob.vertices)
        if actual != blob.diameter:
            return CheckResult.failed(
                "DiameterMismatch",
                f"blob {index} reports diameter {blob.diameter}, actual {actual}",
            )
    total = sum(b.diameter for b in blobs)
    if total > 200 * k**3 * c:
        return CheckResult.failed("BoundExceeded", f"diameters sum to {total} > 200k^3c")

    covered = set().union(*(b.vertices for b in blobs)) if blobs else set()
    rest = G.nx_graph.subgraph(G.vertices - covered)
    for comp in nx.connected_components(rest):
        if not comp.isdisjoint(terminals.S) and not comp.isdisjoint(terminals.T):
            return CheckResult.failed(
                "NotSeparating", f"an S-T path avoids the blobs through {min(comp)}"
            )
    return CheckResult.passed()


def check_obstruction(
    curve: BoundaryCurve,
    c: int,
    system: IntervalSystem,
    demand: DemandFunction,
    cert: ObstructionCert,
) -> CheckResult:
    """A valid boom joining (a, b) that is shorter than the demand crossing it."""
    try:
        validate_demand(system, demand)
    except InvalidDemand as exc:
        return CheckResult.failed("InvalidDemand", str(exc))
    verdict = validate_boom(curve, c, cert.boom)
    if not verdict:
        return CheckResult.failed("BoomInvalid", f"{verdict.failure}: {verdict.detail}")
    if (cert.a, cert.b) != (cert.boom.a, cert.boom.b):
        return CheckResult.failed("BoomInvalid", "boom does not join the stated points")
    actual = demand.crossing_sum(system, cert.a, cert.b)
    if actual != cert.crossing_sum:
        return CheckResult.failed(
            "CrossingSumMismatch", f"stated {cert.crossing_sum}, actual {actual}"
        )
    if cert.boom.length >= actual:
        return CheckResult.failed(
            "BoomTooLong", f"boom length {cert.boom.length} >= crossing sum {actual}"
        )
    return CheckResult.passed()


def check_linkage(
    curve: BoundaryCurve,
    c: int,
    system: IntervalSystem,
    demand: DemandFunction,
    linkage: Linkage,
) -> CheckResult:
    """Demanded path counts, one end in each interval, pairwise far."""
    G = curve.graph
    for pair in set(linkage.paths) | set(demand.positive_pairs()):
        have = len(linkage.paths.get(pair, []))
        if have != demand.get(*pair):
            return CheckResult.failed(
                "DemandNotMet", f"pair {pair} has {have} paths, demand {demand.get(*pair)}"
            )
    everything = []
    for (i, j), group in sorted(linkage.paths.items()):
        A = set(curve.interval_vertices(system[i]))
        B = set(curve.interval_vertices(system[j]))
        for path in group:
            problem = _path_problem(G, path)
            if problem:
                return problem
            ends = {path[0], path[-1]}
            in_a, in_b = A.intersection(path), B.intersection(path)
            oriented = (in_a == {path[0]} and in_b == {path[-1]}) or (
                in_a == {path[-1]} and in_b == {path[0]}
            )
            if not oriented or not in_a <= ends:
                return CheckResult.failed(
                    "EndpointNotInInterval", f"path {list(path)} for pair ({i}, {j})"
                )
            everything.append(path)
    for p, q in combinations(everything, 2):
        if not set(p).isdisjoint(q):
            return CheckResult.failed("PathsNotDisjoint", f"{list(p)} meets {list(q)}")
    return _too_close(G, c, everything) or CheckResult.passed()


def check_decide(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    k: int,
    c: int,
    answer: bool,
    verdict: Verdict,
    bound: Optional[int],
) -> CheckResult:
    """Re-prune at the stated depth and check the verdict for k-1."""
    if k <= 0:
        return CheckResult.passed() if answer else CheckResult.failed(
            "WrongPathCount", "k <= 0 is always answered YES"
        )
    expected = depth_bound(k, c)
    if bound != expected:
        return CheckResult.failed(
            "DepthBoundMismatch", f"stated depth bound {bound}, expected {expected}"
        )
    if answer != verdict.is_yes:
        return CheckResult.failed("WrongPathCount", "answer and verdict disagree")
    H, pruned = prune(G, terminals, bound)
    if verdict.is_yes:
        return check_yes(H, pruned, k - 1, c, verdict.paths)
    return check_no(H, pruned, k - 1, c, verdict.blobs)
