from typing import Dict, List, Literal, Optional, Tuple
from pydantic import BaseModel, Field


class EdgeRecord(BaseModel):
    """One undirected edge of an instance file"""

    id: int  # Edge id, unique in the file
    u: int  # First endpoint
    v: int  # Second endpoint


class InstanceFile(BaseModel):
    """Versioned instance document: an embedded planar graph with terminals"""

    version: int = 1
    name: Optional[str] = None  # Free-form label (generator family, seed)
    vertices: List[int]
    edges: List[EdgeRecord] = []
    rotation: Dict[int, List[int]] = {}  # vertex -> incident edge ids, ccw
    outer: List[Tuple[int, int]] = []  # (tail, edge id) darts on the outer face
    S: List[int]
    T: List[int]
    boundary_order: Optional[List[int]] = None  # Clockwise order of S and T
    coords: Optional[Dict[int, Tuple[float, float]]] = None  # Layout only
    k: Optional[int] = None
    c: Optional[int] = None


class BlobRecord(BaseModel):
    """A connected hitting subgraph of a No certificate"""

    vertices: List[int]
    edges: List[int] = []  # Edge ids inside the blob
    diameter: int  # Diameter measured with distances of the whole graph


class ObstructionRecord(BaseModel):
    """A boom joining two boundary points, with its crossing sum"""

    a: int  # Boundary position (2i vertex, 2i+1 gap)
    b: int
    crossing_sum: int
    logs: List[List[int]]
    links: List[Tuple[str, int]]  # ("face", id) or ("gap", index)


class LinkageRecord(BaseModel):
    i: int
    j: int
    paths: List[List[int]]


class CertificateFile(BaseModel):
    """Self-contained certificate for a solve, decide or linkage run"""

    version: int = 1
    kind: Literal["yes", "no", "linkage", "obstruction"]
    k: Optional[int] = None
    c: int
    digest: str  # sha256 of the canonical instance document
    depth_bound: Optional[int] = None  # Pruning bound used by decide
    boundary_order: Optional[List[int]] = None  # Curve order for interval positions
    paths: List[List[int]] = []
    blobs: List[BlobRecord] = []
    intervals: List[Tuple[int, int]] = []  # (start, end) boundary positions
    demand: List[Tuple[int, int, int]] = []  # (i, j, d) with i < j
    linkage: List[LinkageRecord] = []
    obstruction: Optional[ObstructionRecord] = None


class DemandFile(BaseModel):
    """Intervals given by their end vertices plus a demand list"""

    intervals: List[Tuple[int, int]] = Field(min_length=1)
    demand: List[Tuple[int, int, int]] = []
