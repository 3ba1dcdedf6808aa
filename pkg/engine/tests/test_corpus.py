"""
Corpus tests: the solvers against exhaustive search on random drawings,
instances padded with deep interior vertices, and the rings channel.
"""
import networkx as nx
import numpy as np
import pytest

from coarse_menger import decide_far_paths, main_solve
from disc_linkage import Linkage, pairs_demand, solve_disc_linkage, solve_pairs
from embed_core import (
    BoundaryCurve,
    DemandFunction,
    depth,
    depth_bound,
    interval_covering,
    prune,
)
from errors import CapExceeded
from generators import random_instance
from oracle_verify import (
    check_decide,
    check_linkage,
    check_no,
    check_obstruction,
    check_yes,
    enumerate_st_paths,
    exists_far_family,
    exists_linkage,
    max_disjoint_paths,
)

from .conftest import drawing

SIZES = (4, 6, 8, 10)
SEEDS = range(12)


def _random_pairs(rng, order):
    """Nested or side-by-side pairs of curve vertices; never crossing."""
    m = len(order)
    count = int(rng.integers(1, m // 2 + 1))
    chosen = sorted(int(i) for i in rng.choice(m, size=2 * count, replace=False))
    if rng.random() < 0.5:
        return [(order[chosen[i]], order[chosen[-1 - i]]) for i in range(count)]
    return [(order[chosen[2 * i]], order[chosen[2 * i + 1]]) for i in range(count)]


def _agree(curve, c, system, demand, outcome):
    """The solver outcome re-checks and matches the exhaustive linkage search."""
    try:
        found = exists_linkage(curve, c, system, demand)
    except CapExceeded:
        return False
    if isinstance(outcome, Linkage):
        assert check_linkage(curve, c, system, demand, outcome)
        assert found is not None
    else:
        assert check_obstruction(curve, c, system, demand, outcome)
        assert found is None
    return True


@pytest.mark.integration
class TestDiscDuality:
    """Exactly one of linkage and boom obstruction, as exhaustive search says."""

    @pytest.mark.parametrize("n", SIZES)
    def test_random_pairs(self, n):
        checked = 0
        for seed in SEEDS:
            G, terminals = random_instance(n, seed=seed)
            curve = BoundaryCurve(G, terminals)
            if curve.m < 2:
                continue
            rng = np.random.default_rng(seed)
            for c in (0, 1, 2, 3):
                pairs = _random_pairs(rng, curve.order)
                system, demand = pairs_demand(curve, pairs)
                outcome = solve_pairs(curve, c, pairs)
                checked += _agree(curve, c, system, demand, outcome)
        assert checked

    @pytest.mark.parametrize("n", SIZES)
    def test_covering_demands(self, n):
        checked = 0
        for seed in SEEDS:
            G, terminals = random_instance(n, seed=seed)
            curve = BoundaryCurve(G, terminals)
            system = interval_covering(curve)
            for c, d in ((0, 2), (1, 1), (1, 2), (2, 3)):
                demand = DemandFunction(len(system), {(0, 1): d})
                outcome = solve_disc_linkage(curve, c, system, demand)
                checked += _agree(curve, c, system, demand, outcome)
        assert checked


@pytest.mark.integration
class TestDisjointPaths:
    """With c = 0 far paths are disjoint paths, counted by max-flow."""

    @pytest.mark.parametrize("n", SIZES + (12,))
    def test_main_solve_and_decide(self, n):
        for seed in SEEDS:
            G, terminals = random_instance(n, seed=seed)
            flow = max_disjoint_paths(G, terminals.S, terminals.T)
            for k in (1, 2, 3):
                verdict = main_solve(G, terminals, k, 0)
                assert verdict.is_yes is (flow >= k + 1), (seed, k)
                if verdict.is_yes:
                    assert check_yes(G, terminals, k, 0, verdict.paths)
                else:
                    assert check_no(G, terminals, k, 0, verdict.blobs)
                result = decide_far_paths(G, terminals, k, 0)
                assert result.answer is (flow >= k), (seed, k)
                assert check_decide(
                    G, terminals, k, 0, result.answer, result.verdict, result.depth_bound
                )


@pytest.mark.integration
class TestFarPathOracle:
    """The exact decision against exhaustive far-family search."""

    @pytest.mark.parametrize("n", (6, 8, 10))
    def test_random_drawings(self, n):
        checked = 0
        for seed in SEEDS:
            G, terminals = random_instance(n, seed=seed)
            try:
                paths = enumerate_st_paths(G, terminals.S, terminals.T)
            except CapExceeded:
                continue
            for k in (1, 2, 3):
                for c in (1, 2):
                    expected = exists_far_family(G, c, k - 1, paths) is not None
                    result = decide_far_paths(G, terminals, k, c)
                    assert result.answer is expected, (seed, k, c)
                    checked += 1
        assert checked


@pytest.fixture
def nested_square():
    """Octagon 0..7 around a square 8..11 around a centre 12.

    The square hangs off the octagon's midpoints 1, 3, 5, 7 and the centre
    is joined to all four square corners, so it lies at depth 2.
    """
    ring = [(0, 0), (4, 0), (8, 0), (8, 4), (8, 8), (4, 8), (0, 8), (0, 4)]
    square = [(2, 2), (6, 2), (6, 6), (2, 6), (4, 4)]
    coords = {v: (float(x), float(y)) for v, (x, y) in enumerate(ring + square)}
    pairs = [(i, (i + 1) % 8) for i in range(8)]
    pairs += [(8, 9), (9, 10), (10, 11), (11, 8)]
    pairs += [(1, 8), (3, 9), (5, 10), (7, 11)]
    pairs += [(12, v) for v in (8, 9, 10, 11)]
    return coords, pairs


LAYOUTS = {
    "opposite": ([0, 1, 7], [3, 4, 5]),
    "alternating": ([0, 4], [2, 6]),
    "shared": ([0, 2, 4], [4, 6]),
}


@pytest.mark.integration
class TestDeepPadding:
    """Vertices deeper than the pruning bound never change the answer."""

    @pytest.mark.parametrize("layout", sorted(LAYOUTS))
    def test_oracle_agrees_before_and_after_pruning(self, nested_square, layout):
        coords, pairs = nested_square
        S, T = LAYOUTS[layout]
        G, terminals = drawing(coords, pairs, S, T)
        assert depth(G)[12] == 2
        paths = enumerate_st_paths(G, S, T)
        for k in (1, 2, 3):
            for c in (0, 1, 2):
                expected = exists_far_family(G, c, k - 1, paths) is not None
                H, pruned = prune(G, terminals, depth_bound(k, c))
                kept = enumerate_st_paths(H, pruned.S, pruned.T)
                assert (exists_far_family(H, c, k - 1, kept) is not None) is expected
                result = decide_far_paths(G, terminals, k, c)
                assert result.answer is expected, (layout, k, c)
                assert check_decide(
                    G, terminals, k, c, result.answer, result.verdict, result.depth_bound
                )

    def test_centre_is_pruned_at_small_bounds(self, nested_square):
        coords, pairs = nested_square
        G, terminals = drawing(coords, pairs, *LAYOUTS["opposite"])
        H, _ = prune(G, terminals, depth_bound(2, 1))
        assert 12 not in H.vertices
        assert {8, 9, 10, 11} <= H.vertices


@pytest.mark.integration
class TestRingsChannel:
    def test_four_far_paths_do_not_fit(self, rings_instance):
        G, terminals = rings_instance
        result = decide_far_paths(G, terminals, 4, 3)
        assert result.answer is False
        H, _ = prune(G, terminals, result.depth_bound)
        assert H.vertices == G.vertices
        blobs = result.verdict.blobs
        assert len(blobs) <= 3
        # A blob of diameter at most c meets at most one of a family of
        # (c+1)-distant paths, so three separating blobs allow three paths.
        for blob in blobs:
            for u in blob.vertices:
                near = nx.single_source_shortest_path_length(G.nx_graph, u, cutoff=3)
                assert blob.vertices <= near.keys()
        covered = set().union(*(blob.vertices for blob in blobs))
        rest = G.nx_graph.subgraph(G.vertices - covered)
        for s in terminals.S - covered:
            assert nx.node_connected_component(rest, s).isdisjoint(terminals.T)

    def test_three_far_paths_fit(self, rings_instance):
        G, terminals = rings_instance
        result = decide_far_paths(G, terminals, 3, 3)
        assert result.answer is True
        assert check_yes(G, terminals, 2, 3, result.verdict.paths)
