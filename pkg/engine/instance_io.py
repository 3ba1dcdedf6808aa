"""Instance, certificate and demand files.

All three are JSON documents validated with the pydantic models in
``models``. Parse failures are reported as ``InstanceFormatError`` carrying
the line of the offending token or key.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from boom_engine import Boom, ObstructionCert
from coarse_menger import Blob, DecideResult, Verdict
from config import config
from disc_linkage import Linkage
from embed_core import (
    BoundaryCurve,
    DemandFunction,
    EmbeddedPlanarGraph,
    Interval,
    IntervalSystem,
    Terminals,
    build_embedding,
    outer_darts_from_coords,
    rotation_from_coords,
)
from errors import InstanceFormatError
from models import (
    BlobRecord,
    CertificateFile,
    DemandFile,
    EdgeRecord,
    InstanceFile,
    LinkageRecord,
    ObstructionRecord,
)

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _line_of(text: str, loc: Sequence[Union[str, int]]) -> Optional[int]:
    """Best-effort line of the key path ``loc`` inside ``text``."""
    offset = -1
    for part in loc:
        if not isinstance(part, str):
            continue
        found = text.find(f'"{part}"', max(offset, 0))
        if found < 0:
            break
        offset = found
    if offset < 0:
        return None
    return text.count("\n", 0, offset) + 1


def _parse(text: str, model: Type[Model]) -> Model:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(exc.msg, exc.lineno) from exc
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"]) or "document"
        raise InstanceFormatError(
            f"{where}: {error['msg']}", _line_of(text, error["loc"])
        ) from exc


def parse_instance(text: str) -> InstanceFile:
    """Parse an instance document without building the drawing."""
    instance = _parse(text, InstanceFile)
    if instance.version != config.FORMAT_VERSION:
        raise InstanceFormatError(
            f"unsupported instance version {instance.version}", _line_of(text, ["version"])
        )
    return instance


def parse_certificate(text: str) -> CertificateFile:
    return _parse(text, CertificateFile)


def parse_demand(text: str) -> DemandFile:
    return _parse(text, DemandFile)


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


def embedding_from_instance(
    instance: InstanceFile,
) -> Tuple[EmbeddedPlanarGraph, Terminals]:
    """Build and validate the drawing of an instance.

    Missing rotations or outer darts are derived from ``coords`` when present.
    """
    edges = {record.id: (record.u, record.v) for record in instance.edges}
    if len(edges) != len(instance.edges):
        raise InstanceFormatError("edge ids must be unique")
    rotation: Dict[int, Sequence[int]] = dict(instance.rotation)
    outer = list(instance.outer)
    coords = instance.coords
    if edges and not rotation:
        if coords is None:
            raise InstanceFormatError("rotation is required when coords are absent")
        rotation = rotation_from_coords(instance.vertices, edges, coords)
    if edges and not outer:
        if coords is None:
            raise InstanceFormatError("outer is required when coords are absent")
        outer = outer_darts_from_coords(instance.vertices, edges, rotation, coords)
    return build_embedding(
        instance.vertices,
        edges,
        rotation,
        outer,
        instance.S,
        instance.T,
        instance.boundary_order,
        coords,
    )


def load_instance(
    path: Union[str, Path],
) -> Tuple[InstanceFile, EmbeddedPlanarGraph, Terminals]:
    instance = parse_instance(read_text(path))
    G, terminals = embedding_from_instance(instance)
    logger.debug("Loaded %s: %r", path, G)
    return instance, G, terminals


def instance_from_embedding(
    G: EmbeddedPlanarGraph,
    terminals: Terminals,
    name: Optional[str] = None,
    k: Optional[int] = None,
    c: Optional[int] = None,
) -> InstanceFile:
    return InstanceFile(
        version=config.FORMAT_VERSION,
        name=name,
        vertices=sorted(G.vertices),
        edges=[EdgeRecord(id=e, u=u, v=v) for e, (u, v) in sorted(G.edges.items())],
        rotation={v: list(G.rotation[v]) for v in sorted(G.vertices)},
        outer=[tuple(dart) for dart in G.outer],
        S=sorted(terminals.S),
        T=sorted(terminals.T),
        boundary_order=list(terminals.boundary_order),
        coords=(
            {v: tuple(G.coords[v]) for v in sorted(G.coords)} if G.coords else None
        ),
        k=k,
        c=c,
    )


def serialize(document: BaseModel) -> str:
    return document.model_dump_json(indent=2, exclude_none=True) + "\n"


def instance_digest(instance: InstanceFile) -> str:
    """sha256 of the canonical instance JSON, ignoring k, c, name and coords."""
    data = instance.model_dump(mode="json", exclude={"k", "c", "name", "coords"})
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_document(document: BaseModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(document), encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Demand files
# ---------------------------------------------------------------------------


def demand_from_file(
    curve: BoundaryCurve, document: DemandFile
) -> Tuple[IntervalSystem, DemandFunction]:
    """Intervals named by their end terminals, plus the demand values.

    Raises:
        InstanceFormatError: if an interval end is not a boundary terminal
    """
    intervals = []
    for u, v in document.intervals:
        if u not in curve.index or v not in curve.index:
            raise InstanceFormatError(f"interval ({u}, {v}) ends are not terminals")
        intervals.append(curve.interval(u, v))
    ordered = sorted(range(len(intervals)), key=lambda i: intervals[i].start)
    renumber = {old: new for new, old in enumerate(ordered)}
    system = IntervalSystem(tuple(intervals[i] for i in ordered), curve.size)
    values: Dict[Tuple[int, int], int] = {}
    for i, j, d in document.demand:
        if not (0 <= i < len(intervals) and 0 <= j < len(intervals)) or i == j:
            raise InstanceFormatError(f"demand ({i}, {j}) names unknown intervals")
        a, b = sorted((renumber[i], renumber[j]))
        values[(a, b)] = values.get((a, b), 0) + d
    return system, DemandFunction(len(system), values)


def system_records(system: IntervalSystem) -> List[Tuple[int, int]]:
    return [(interval.start, interval.end) for interval in system.intervals]


def system_from_records(
    records: Sequence[Tuple[int, int]], size: int
) -> IntervalSystem:
    return IntervalSystem(tuple(Interval(a, b, size) for a, b in records), size)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def _blob_records(blobs: Sequence[Blob]) -> List[BlobRecord]:
    return [
        BlobRecord(
            vertices=sorted(blob.vertices), edges=sorted(blob.edges), diameter=blob.diameter
        )
        for blob in blobs
    ]


def certificate_from_verdict(
    verdict: Verdict,
    k: int,
    c: int,
    digest: str,
    depth_bound: Optional[int] = None,
) -> CertificateFile:
    return CertificateFile(
        version=config.FORMAT_VERSION,
        kind="yes" if verdict.is_yes else "no",
        k=k,
        c=c,
        digest=digest,
        depth_bound=depth_bound,
        paths=[list(p) for p in verdict.paths],
        blobs=_blob_records(verdict.blobs),
    )


def certificate_from_decision(
    result: DecideResult, k: int, c: int, digest: str
) -> CertificateFile:
    return certificate_from_verdict(result.verdict, k, c, digest, result.depth_bound)


def certificate_from_linkage(
    outcome: Union[Linkage, ObstructionCert],
    system: IntervalSystem,
    demand: DemandFunction,
    c: int,
    digest: str,
    order: Sequence[int],
) -> CertificateFile:
    """Linkage or obstruction certificate, carrying its interval system and
    the boundary order its positions refer to."""
    common = dict(
        version=config.FORMAT_VERSION,
        c=c,
        digest=digest,
        boundary_order=list(order),
        intervals=system_records(system),
        demand=[(i, j, d) for (i, j), d in sorted(demand.values.items()) if d > 0],
    )
    if isinstance(outcome, Linkage):
        return CertificateFile(
            kind="linkage",
            linkage=[
                LinkageRecord(i=i, j=j, paths=[list(p) for p in paths])
                for (i, j), paths in sorted(outcome.paths.items())
            ],
            **common,
        )
    boom = outcome.boom
    return CertificateFile(
        kind="obstruction",
        obstruction=ObstructionRecord(
            a=outcome.a,
            b=outcome.b,
            crossing_sum=outcome.crossing_sum,
            logs=[list(log) for log in boom.logs],
            links=[tuple(region) for region in boom.links],
        ),
        **common,
    )


def blobs_from_certificate(cert: CertificateFile) -> List[Blob]:
    return [
        Blob(frozenset(b.vertices), frozenset(b.edges), b.diameter) for b in cert.blobs
    ]


def verdict_from_certificate(cert: CertificateFile) -> Verdict:
    if cert.kind not in ("yes", "no"):
        raise InstanceFormatError(f"a {cert.kind} certificate carries no verdict")
    return Verdict(cert.kind, [list(p) for p in cert.paths], blobs_from_certificate(cert))


def linkage_from_certificate(
    cert: CertificateFile, system: IntervalSystem, demand: DemandFunction
) -> Linkage:
    paths: Dict[Tuple[int, int], List[List[int]]] = {}
    for record in cert.linkage:
        paths.setdefault((record.i, record.j), []).extend(list(p) for p in record.paths)
    return Linkage(paths, system, demand)


def obstruction_from_certificate(cert: CertificateFile) -> ObstructionCert:
    record = cert.obstruction
    if record is None:
        raise InstanceFormatError("obstruction certificate has no obstruction")
    boom = Boom(
        tuple(tuple(log) for log in record.logs),
        tuple((kind, int(index)) for kind, index in record.links),
        record.a,
        record.b,
    )
    return ObstructionCert(record.a, record.b, boom, record.crossing_sum)


def demand_from_certificate(
    cert: CertificateFile, size: int
) -> Tuple[IntervalSystem, DemandFunction]:
    system = system_from_records(cert.intervals, size)
    values = {(i, j): d for i, j, d in cert.demand}
    return system, DemandFunction(len(system), values)
