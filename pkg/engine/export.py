"""Static figure export: Graphviz DOT text and matplotlib SVG."""

import logging
from pathlib import Path
from typing import Dict, Iterable, Optional, Set, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402

from embed_core import EmbeddedPlanarGraph, Terminals  # noqa: E402
from errors import InstanceFormatError  # noqa: E402
from models import CertificateFile  # noqa: E402

logger = logging.getLogger(__name__)

PALETTE = ("#E76F51", "#2A9D8F", "#E9C46A", "#264653", "#F4A261", "#8AB17D")


def _highlights(
    G: EmbeddedPlanarGraph, cert: Optional[CertificateFile]
) -> Dict[int, int]:
    """Edge id -> highlight group for the paths, blobs or logs of ``cert``."""
    if cert is None:
        return {}
    groups = [list(p) for p in cert.paths]
    for record in cert.linkage:
        groups.extend(list(p) for p in record.paths)
    if cert.obstruction is not None:
        groups.extend(list(log) for log in cert.obstruction.logs)
    marked: Dict[int, int] = {}
    for index, path in enumerate(groups):
        for u, v in zip(path, path[1:]):
            if G.nx_graph.has_edge(u, v):
                marked[G.edge_between(u, v)] = index
    offset = len(groups)
    for index, blob in enumerate(cert.blobs):
        for e in blob.edges:
            marked[e] = offset + index
    return marked


def _marked_vertices(cert: Optional[CertificateFile]) -> Set[int]:
    if cert is None:
        return set()
    found: Set[int] = set()
    for blob in cert.blobs:
        found.update(blob.vertices)
    for path in cert.paths:
        found.update(path)
    return found


def to_dot(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    cert: Optional[CertificateFile] = None,
    name: str = "instance",
) -> str:
    """Graphviz text; terminals are boxed and certificate parts are coloured."""
    marked = _highlights(G, cert)
    hot = _marked_vertices(cert)
    lines = [f'graph "{name}" {{', "  node [shape=circle, fontsize=10];"]
    for v in sorted(G.vertices):
        attrs = []
        label = terminals.label(v)
        if label:
            attrs.append("shape=box")
            attrs.append(f'xlabel="{label}"')
        if v in hot:
            attrs.append("style=filled, fillcolor=\"#F4A261\"")
        if G.coords:
            x, y = G.coords[v]
            attrs.append(f'pos="{x:.3f},{y:.3f}!"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    for e, (u, v) in sorted(G.edges.items()):
        if e in marked:
            color = PALETTE[marked[e] % len(PALETTE)]
            lines.append(f'  {u} -- {v} [color="{color}", penwidth=3];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    path: Union[str, Path],
    cert: Optional[CertificateFile] = None,
    title: Optional[str] = None,
) -> Path:
    """Draw the instance with its certificate overlay.

    Raises:
        InstanceFormatError: if the drawing has no coordinates
    """
    if not G.coords:
        raise InstanceFormatError("svg export needs vertex coordinates")
    coords = G.coords
    marked = _highlights(G, cert)
    fig, ax = plt.subplots(1, 1, figsize=(8, 8))

    plain = [(coords[u], coords[v]) for e, (u, v) in G.edges.items() if e not in marked]
    ax.add_collection(LineCollection(plain, colors="#B0B0B0", linewidths=1.0, zorder=1))
    for e, group in sorted(marked.items()):
        u, v = G.edges[e]
        ax.plot(
            [coords[u][0], coords[v][0]],
            [coords[u][1], coords[v][1]],
            color=PALETTE[group % len(PALETTE)],
            linewidth=3,
            zorder=2,
        )

    def scatter(vertices: Iterable[int], **style) -> None:
        vertices = sorted(vertices)
        if vertices:
            ax.scatter(
                [coords[v][0] for v in vertices], [coords[v][1] for v in vertices], **style
            )

    scatter(G.vertices - terminals.vertices, s=12, color="#404040", zorder=3)
    scatter(terminals.S - terminals.T, s=60, color="#2A9D8F", marker="s", zorder=4)
    scatter(terminals.T - terminals.S, s=60, color="#E76F51", marker="s", zorder=4)
    scatter(terminals.S & terminals.T, s=70, color="#264653", marker="D", zorder=4)
    if cert is not None:
        for blob in cert.blobs:
            scatter(blob.vertices, s=90, facecolors="none", edgecolors="#E9C46A", zorder=5)

    ax.set_aspect("equal")
    ax.autoscale()
    ax.axis("off")
    if title:
        ax.set_title(title)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    logger.info("Wrote %s", path)
    return path
