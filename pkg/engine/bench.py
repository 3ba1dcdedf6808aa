"""Benchmark harness: timed decide runs over generated instances."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

import numpy as np

from coarse_menger import decide_far_paths
from config import config
from generators import gen_instance
from instance_io import embedding_from_instance

logger = logging.getLogger(__name__)


@dataclass
class BenchRow:
    family: str
    n: int
    vertices: int
    edges: int
    verdict: str
    seconds: float


def run_one(family: str, size: int, k: int, c: int, seed: Optional[int] = None) -> BenchRow:
    """Generate one instance and time ``decide_far_paths`` on it."""
    instance = gen_instance(family, size, seed)
    G, terminals = embedding_from_instance(instance)
    start = time.perf_counter()
    result = decide_far_paths(G, terminals, k, c)
    seconds = time.perf_counter() - start
    verdict = "YES" if result.answer else "NO"
    logger.info("%s n=%d: %s in %.3fs", family, size, verdict, seconds)
    return BenchRow(family, size, len(G.vertices), len(G.edges), verdict, seconds)


def run_bench(
    family: str,
    sizes: Sequence[int],
    k: int,
    c: int,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[BenchRow]:
    workers = config.BENCH_WORKERS if workers is None else workers
    if workers <= 1:
        return [run_one(family, n, k, c, seed) for n in sizes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_one, family, n, k, c, seed) for n in sizes]
        return [future.result() for future in futures]


def fit_exponent(rows: Sequence[BenchRow]) -> Optional[float]:
    """Slope of log(seconds) against log(vertices), by least squares."""
    points = [(r.vertices, r.seconds) for r in rows if r.vertices > 0 and r.seconds > 0]
    if len({v for v, _ in points}) < 2:
        return None
    x = np.log([v for v, _ in points])
    y = np.log([s for _, s in points])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def format_table(rows: Sequence[BenchRow]) -> str:
    header = f"{'family':<8} {'n':>6} {'vertices':>9} {'edges':>9} {'verdict':>7} {'seconds':>9}"
    lines = [header, "-" * len(header)]
    for row in rows:
        data = asdict(row)
        lines.append(
            f"{data['family']:<8} {data['n']:>6} {data['vertices']:>9} {data['edges']:>9} "
            f"{data['verdict']:>7} {data['seconds']:>9.3f}"
        )
    return "\n".join(lines)
