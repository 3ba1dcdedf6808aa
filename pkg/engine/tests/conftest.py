"""
Test fixtures and configuration for the far-paths engine tests.
"""
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pytest

from embed_core import (
    build_embedding,
    outer_darts_from_coords,
    rotation_from_coords,
)
from generators import grid, rings
from instance_io import instance_from_embedding, write_document


def drawing(
    coords: Dict[int, Tuple[float, float]],
    pairs: Sequence[Tuple[int, int]],
    S: Iterable[int],
    T: Iterable[int],
    order: Optional[Sequence[int]] = None,
):
    """Straight-line drawing with edge ids in the order ``pairs`` lists them."""
    vertices = sorted(coords)
    edges = {e: pair for e, pair in enumerate(pairs)}
    rotation = rotation_from_coords(vertices, edges, coords)
    outer = outer_darts_from_coords(vertices, edges, rotation, coords)
    return build_embedding(vertices, edges, rotation, outer, S, T, order, coords)


@pytest.fixture
def triangle():
    coords = {0: (0.0, 0.0), 1: (2.0, 0.0), 2: (1.0, 2.0)}
    return drawing(coords, [(0, 1), (1, 2), (0, 2)], [0], [1])


@pytest.fixture
def path4():
    """Path 0-1-2-3 with S={0,1} and T={1,3}; vertex 1 is in both."""
    coords = {v: (float(v), 0.0) for v in range(4)}
    return drawing(coords, [(0, 1), (1, 2), (2, 3)], [0, 1], [1, 3])


@pytest.fixture
def cycle4():
    coords = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 1.0)}
    return coords, [(0, 1), (1, 2), (2, 3), (3, 0)]


@pytest.fixture
def wheel():
    """Centre 0 with rim 1..6."""
    coords = {0: (0.0, 0.0)}
    for i in range(1, 7):
        angle = 2 * math.pi * (i - 1) / 6
        coords[i] = (math.cos(angle), math.sin(angle))
    pairs: List[Tuple[int, int]] = [(0, i) for i in range(1, 7)]
    pairs += [(i, i % 6 + 1) for i in range(1, 7)]
    return coords, pairs


@pytest.fixture
def bowtie():
    """Two triangles sharing vertex 2; every S-T path passes through it."""
    coords = {0: (0.0, 0.0), 1: (0.0, 2.0), 2: (1.0, 1.0), 3: (2.0, 0.0), 4: (2.0, 2.0)}
    pairs = [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]
    return drawing(coords, pairs, [0, 1], [3, 4])


@pytest.fixture
def cut_lobe():
    """Triangle 2-3-4 with a path 4-9-6 hanging off its apex.

    The outer walk visits the cut vertices 4 and 9 twice; 9 is in S and T,
    and 4 starts a second S-T stretch on the way back down.
    """
    coords = {
        0: (5.0, 4.0),
        1: (4.0, 1.5),
        2: (0.0, 0.0),
        3: (10.0, 0.0),
        4: (5.0, 10.0),
        5: (3.0, 1.0),
        6: (5.0, 16.0),
        7: (7.5, 4.0),
        8: (6.5, 6.0),
        9: (5.0, 13.0),
        10: (5.0, 2.0),
    }
    pairs = [(0, 2), (0, 3), (0, 4), (0, 8), (1, 5), (1, 10), (2, 3)]
    pairs += [(2, 4), (2, 5), (3, 4), (4, 8), (4, 9), (6, 9), (7, 8)]
    return drawing(coords, pairs, [2, 3, 6, 9], [4, 9])


@pytest.fixture
def grid3():
    return grid(3)


@pytest.fixture
def grid5():
    return grid(5)


@pytest.fixture(scope="session")
def rings_instance():
    """Three layers of spacing four: left terminals at rows 0, 8, 16, 24."""
    return rings(3, 4)


@pytest.fixture
def bowtie_file(bowtie, tmp_path):
    G, terminals = bowtie
    return write_document(
        instance_from_embedding(G, terminals, name="bowtie"), tmp_path / "bowtie.json"
    )


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line("markers", "cli: mark test as a command line test")
