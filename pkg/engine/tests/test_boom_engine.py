"""
Tests for boom validation and the shortest-boom search.
"""
import networkx as nx
import pytest

from boom_engine import Boom, BoomSearch, boom_obstruction, shortest_boom, validate_boom
from disc_linkage import pairs_demand
from embed_core import BoundaryCurve, make_terminals
from generators import grid

# Rings ids are y * 14 + x; terminals sit on the outer columns every 8 rows.
LEFT = {row: row * 14 for row in (0, 8, 16, 24)}
RIGHT = {row: row * 14 + 13 for row in (0, 8, 16, 24)}
NESTED = [(LEFT[r], RIGHT[r]) for r in (24, 16, 8, 0)]


@pytest.fixture
def rings_curve(rings_instance):
    G, terminals = rings_instance
    return BoundaryCurve(G, terminals)


@pytest.fixture
def grid4_curve():
    G, _ = grid(4)
    return BoundaryCurve(G, make_terminals(G, [12, 0], [15, 3], strict=False))


@pytest.mark.unit
class TestValidateBoom:
    def test_single_column_log(self, grid4_curve):
        boom = Boom(((12, 8, 4, 0),), (), 3, 7)
        assert validate_boom(grid4_curve, 3, boom)

    def test_log_too_long(self, grid4_curve):
        boom = Boom(((12, 8, 4, 0),), (), 3, 7)
        result = validate_boom(grid4_curve, 2, boom)
        assert not result
        assert result.failure == "LogTooLong"

    def test_log_must_be_a_path(self, grid4_curve):
        result = validate_boom(grid4_curve, 3, Boom(((12, 4),), (), 3, 7))
        assert result.failure == "LogNotPath"

    def test_unknown_region(self, grid4_curve):
        boom = Boom(((12,), (0,)), (("face", 999),), 3, 7)
        assert validate_boom(grid4_curve, 3, boom).failure == "UnknownRegion"

    def test_link_count(self, grid4_curve):
        boom = Boom(((12,), (0,)), (), 3, 7)
        assert validate_boom(grid4_curve, 3, boom).failure == "LinkRegionNotIncident"

    def test_unattached_endpoint(self, grid4_curve):
        boom = Boom(((5, 9),), (), 3, 7)
        assert validate_boom(grid4_curve, 3, boom).failure == "EndpointNotAttached"

    def test_empty_boom_in_shared_gap(self, grid4_curve):
        assert validate_boom(grid4_curve, 0, Boom((), (("gap", 1),), 3, 3))
        bad = Boom((), (("gap", 1),), 3, 5)
        assert validate_boom(grid4_curve, 0, bad).failure == "NoCommonRegion"


@pytest.mark.unit
class TestBoomSearch:
    def test_direct_log_between_opposite_sides(self, grid4_curve):
        boom = shortest_boom(grid4_curve, 3, 3, 7, 1)
        assert boom is not None
        assert boom.length == 1
        assert validate_boom(grid4_curve, 3, boom)

    def test_too_far_for_one_log(self, grid4_curve):
        assert shortest_boom(grid4_curve, 2, 3, 7, 1) is None

    def test_two_logs_across_a_face(self, grid4_curve):
        boom = shortest_boom(grid4_curve, 1, 3, 7, 2)
        assert boom is not None
        assert boom.length == 2
        assert validate_boom(grid4_curve, 1, boom)

    def test_same_gap(self, grid4_curve):
        boom = BoomSearch(grid4_curve, 0).between((3,), (3,), 0)
        assert boom.length == 0

    def test_rings_channel_needs_three_logs(self, rings_curve):
        assert shortest_boom(rings_curve, 3, 7, 15, 2) is None
        boom = shortest_boom(rings_curve, 3, 7, 15, 3)
        assert boom is not None
        assert boom.length == 3
        assert validate_boom(rings_curve, 3, boom)


@pytest.mark.integration
class TestBoomObstruction:
    def test_nested_pairs_through_channel(self, rings_curve):
        system, demand = pairs_demand(rings_curve, NESTED)
        cert = boom_obstruction(rings_curve, 3, system, demand)
        assert cert is not None
        assert (cert.a, cert.b) == (7, 15)
        assert cert.boom.length == 3
        assert cert.crossing_sum == 4

    def test_three_pairs_fit(self, rings_curve):
        system, demand = pairs_demand(rings_curve, NESTED[:3])
        assert boom_obstruction(rings_curve, 3, system, demand) is None


def _logs(G, c):
    """Every path with at most c edges, one orientation each."""
    found = set()

    def extend(path):
        key = tuple(path) if path[0] <= path[-1] else tuple(reversed(path))
        found.add(key)
        if len(path) - 1 == c:
            return
        for w in G.nx_graph[path[-1]]:
            if w not in path:
                extend(path + [w])

    for v in G.vertices:
        extend([v])
    return found


def _fewest_logs(curve, c, logs, a, b):
    """Shortest log chain from a to b, searched over logs and regions."""
    if a == b and a % 2 == 1:
        return 0
    chain = nx.Graph()
    ends_a, ends_b = curve.point_vertices(a), curve.point_vertices(b)
    for log in logs:
        node = ("log", log)
        for v in log:
            chain.add_edges_from((node, ("region", r)) for r in curve.vertex_regions[v])
        if ends_a.intersection(log):
            chain.add_edge("a", node)
        if ends_b.intersection(log):
            chain.add_edge(node, "b")
    try:
        return nx.shortest_path_length(chain, "a", "b") // 2
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return None


def _length(boom):
    return None if boom is None else boom.length


@pytest.mark.integration
class TestBoomMinimality:
    """Booms found by the region search against a search over every log."""

    CAP = 8

    @pytest.mark.parametrize("c", [0, 1, 2])
    def test_grid4_every_pair(self, grid4_curve, c):
        curve = grid4_curve
        logs = _logs(curve.graph, c)
        for a in range(curve.size):
            for b in range(curve.size):
                expected = _fewest_logs(curve, c, logs, a, b)
                if expected is not None and expected > self.CAP:
                    expected = None
                boom = shortest_boom(curve, c, a, b, self.CAP)
                assert _length(boom) == expected, (a, b)
                if boom is not None:
                    assert validate_boom(curve, c, boom)

    @pytest.mark.parametrize("c", [0, 1])
    def test_grid3_columns(self, grid3, c):
        G, terminals = grid3
        curve = BoundaryCurve(G, terminals)
        logs = _logs(G, c)
        for a in range(curve.size):
            for b in range(curve.size):
                boom = shortest_boom(curve, c, a, b, self.CAP)
                assert _length(boom) == _fewest_logs(curve, c, logs, a, b), (a, b)

    def test_symmetric_in_its_ends(self, rings_curve):
        for a, b in ((7, 15), (1, 9), (3, 12), (0, 8)):
            there = shortest_boom(rings_curve, 3, a, b, 6)
            back = shortest_boom(rings_curve, 3, b, a, 6)
            assert _length(there) == _length(back)

    def test_never_longer_for_larger_c(self, grid4_curve):
        for a in range(grid4_curve.size):
            for b in range(grid4_curve.size):
                previous = None
                for c in range(4):
                    length = _length(shortest_boom(grid4_curve, c, a, b, self.CAP))
                    if previous is not None:
                        assert length is not None and length <= previous, (a, b, c)
                    previous = length
