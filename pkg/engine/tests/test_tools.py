"""
Tests for instance generators, the benchmark harness and drawing export.
"""
from pathlib import Path

import networkx as nx
import pytest

from bench import BenchRow, fit_exponent, format_table, run_bench, run_one
from errors import InstanceFormatError
from export import to_dot, to_svg
from generators import gen_instance, grid, random_instance, rings
from instance_io import (
    embedding_from_instance,
    instance_digest,
    instance_from_embedding,
)

GOLDEN_RANDOM = Path(__file__).parent / "golden" / "random-12-7.sha256"


@pytest.mark.unit
class TestGenerators:
    def test_grid_shape(self, grid3):
        G, terminals = grid3
        assert len(G.vertices) == 9
        assert len(G.edges) == 12
        assert len(G.faces) == 5
        assert terminals.S == frozenset({0, 3, 6})
        assert terminals.T == frozenset({2, 5, 8})

    def test_grid_too_small(self):
        with pytest.raises(InstanceFormatError):
            grid(1)

    def test_rings_terminals(self, rings_instance):
        _, terminals = rings_instance
        assert sorted(terminals.S) == [0, 112, 224, 336]
        assert sorted(terminals.T) == [13, 125, 237, 349]

    def test_rings_channel_is_narrow(self, rings_instance):
        G, _ = rings_instance
        assert 6 * 14 + 6 in G.vertices
        assert 5 * 14 + 6 not in G.vertices
        assert 18 * 14 + 6 not in G.vertices

    def test_rings_needs_a_layer(self):
        with pytest.raises(InstanceFormatError):
            rings(0, 4)

    def test_random_is_seeded(self):
        G1, t1 = random_instance(9, seed=3)
        G2, t2 = random_instance(9, seed=3)
        assert G1.rotation == G2.rotation
        assert t1 == t2
        assert G1.is_connected
        assert len(G1.vertices) == 9
        assert t1.S | t1.T <= G1.outer_vertices

    def test_random_drawings_vary(self):
        drawings = [random_instance(10, seed=seed) for seed in range(20)]
        assert any(
            next(nx.articulation_points(G.nx_graph), None) is not None for G, _ in drawings
        )
        assert any(terminals.S & terminals.T for _, terminals in drawings)
        assert any(min(dict(G.nx_graph.degree).values()) == 1 for G, _ in drawings)
        assert len({len(G.edges) for G, _ in drawings}) > 1

    def test_random_digest_is_frozen(self):
        digest = instance_digest(gen_instance("random", 12, seed=7))
        assert digest == instance_digest(gen_instance("random", 12, seed=7))
        assert digest != instance_digest(gen_instance("random", 12, seed=8))
        if not GOLDEN_RANDOM.exists():
            GOLDEN_RANDOM.parent.mkdir(parents=True, exist_ok=True)
            GOLDEN_RANDOM.write_text(digest + "\n")
        assert GOLDEN_RANDOM.read_text().strip() == digest

    def test_random_too_small(self):
        with pytest.raises(InstanceFormatError):
            random_instance(1)

    def test_unknown_family(self):
        with pytest.raises(InstanceFormatError):
            gen_instance("torus", 3)


@pytest.mark.integration
class TestBench:
    def test_run_one(self):
        row = run_one("grid", 3, 1, 0)
        assert (row.vertices, row.edges, row.verdict) == (9, 12, "YES")
        assert row.seconds >= 0

    def test_serial_bench(self):
        rows = run_bench("grid", [2, 3], 1, 0, workers=1)
        assert [row.n for row in rows] == [2, 3]

    def test_fit_exponent(self):
        rows = [
            BenchRow("grid", 1, 10, 0, "YES", 1.0),
            BenchRow("grid", 2, 100, 0, "YES", 100.0),
        ]
        assert fit_exponent(rows) == pytest.approx(2.0)

    def test_fit_needs_two_sizes(self):
        assert fit_exponent([BenchRow("grid", 1, 10, 0, "YES", 1.0)]) is None

    def test_table(self):
        table = format_table([BenchRow("rings", 3, 350, 600, "NO", 0.25)])
        header, rule, line = table.splitlines()
        assert "verdict" in header
        assert set(rule) == {"-"}
        assert line.split() == ["rings", "3", "350", "600", "NO", "0.250"]


@pytest.mark.unit
class TestExport:
    def test_svg_written(self, grid3, tmp_path):
        G, terminals = grid3
        path = to_svg(G, terminals, tmp_path / "out" / "grid3.svg", title="grid3")
        assert path.exists()
        assert "<svg" in path.read_text()

    def test_svg_needs_coords(self, grid3, tmp_path):
        G, terminals = grid3
        instance = instance_from_embedding(G, terminals)
        instance.coords = None
        G2, terminals2 = embedding_from_instance(instance)
        with pytest.raises(InstanceFormatError):
            to_svg(G2, terminals2, tmp_path / "x.svg")

    def test_dot_boxes_terminals(self, grid3):
        G, terminals = grid3
        text = to_dot(G, terminals, name="g")
        assert text.count("shape=box") == 6
