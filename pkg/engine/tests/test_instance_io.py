"""
Tests for instance, demand and certificate documents.
"""
import pytest

from coarse_menger import decide_far_paths, main_solve
from disc_linkage import Linkage, solve_pairs, pairs_demand
from embed_core import BoundaryCurve, make_terminals
from errors import BoundaryOrderError, InstanceFormatError
from generators import gen_instance, grid
from instance_io import (
    certificate_from_decision,
    certificate_from_linkage,
    certificate_from_verdict,
    demand_from_certificate,
    demand_from_file,
    embedding_from_instance,
    instance_digest,
    instance_from_embedding,
    linkage_from_certificate,
    load_instance,
    obstruction_from_certificate,
    parse_certificate,
    parse_demand,
    parse_instance,
    serialize,
    verdict_from_certificate,
    write_document,
)
from models import DemandFile, InstanceFile


@pytest.mark.unit
class TestParsing:
    def test_syntax_error_line(self):
        text = '{\n  "vertices": [0],\n  "S": [0]\n  "T": [0]\n}'
        with pytest.raises(InstanceFormatError) as excinfo:
            parse_instance(text)
        assert excinfo.value.line == 4

    def test_validation_error_line(self):
        text = '{\n  "vertices": [0],\n  "S": [0],\n  "T": "x"\n}'
        with pytest.raises(InstanceFormatError) as excinfo:
            parse_instance(text)
        assert excinfo.value.line == 4
        assert "line 4" in str(excinfo.value)

    def test_unsupported_version(self):
        with pytest.raises(InstanceFormatError):
            parse_instance('{"version": 9, "vertices": [0], "S": [0], "T": [0]}')

    def test_single_vertex_instance(self):
        instance = parse_instance('{"vertices": [7], "S": [7], "T": [7]}')
        G, terminals = embedding_from_instance(instance)
        assert G.vertices == frozenset({7})
        assert terminals.boundary_order == (7,)

    def test_rotation_needed_without_coords(self):
        instance = InstanceFile(
            vertices=[0, 1], edges=[{"id": 0, "u": 0, "v": 1}], S=[0], T=[1]
        )
        with pytest.raises(InstanceFormatError):
            embedding_from_instance(instance)

    def test_coords_fill_in_rotation(self):
        instance = InstanceFile(
            vertices=[0, 1, 2],
            edges=[{"id": 0, "u": 0, "v": 1}, {"id": 1, "u": 1, "v": 2}, {"id": 2, "u": 0, "v": 2}],
            S=[0],
            T=[1],
            coords={0: (0.0, 0.0), 1: (2.0, 0.0), 2: (1.0, 2.0)},
        )
        G, terminals = embedding_from_instance(instance)
        assert len(G.faces) == 2
        assert terminals.boundary_order == (0, 1)

    def test_bad_boundary_order(self):
        G, terminals = grid(2)
        instance = instance_from_embedding(G, terminals)
        instance.boundary_order = [0, 3, 2, 1]
        with pytest.raises(BoundaryOrderError):
            embedding_from_instance(instance)


@pytest.mark.unit
class TestInstanceFiles:
    def test_write_and_load(self, tmp_path, grid3):
        G, terminals = grid3
        path = write_document(instance_from_embedding(G, terminals, name="g3"), tmp_path / "g3.json")
        instance, G2, terminals2 = load_instance(path)
        assert instance.name == "g3"
        assert G2.rotation == G.rotation
        assert terminals2 == terminals

    def test_digest_ignores_parameters(self, grid3):
        G, terminals = grid3
        plain = instance_from_embedding(G, terminals)
        tuned = instance_from_embedding(G, terminals, name="other", k=2, c=1)
        assert instance_digest(plain) == instance_digest(tuned)

    def test_digest_sees_terminals(self, grid3):
        G, terminals = grid3
        plain = instance_from_embedding(G, terminals)
        other = instance_from_embedding(G, make_terminals(G, [0], [8]))
        assert instance_digest(plain) != instance_digest(other)

    def test_serialize_drops_missing_fields(self, grid3):
        G, terminals = grid3
        text = serialize(instance_from_embedding(G, terminals))
        assert '"k"' not in text
        assert text.endswith("\n")

    def test_generated_names(self):
        assert gen_instance("grid", 3).name == "grid-3-7"
        assert gen_instance("random", 4, seed=11).name == "random-4-11"


@pytest.mark.unit
class TestDemandFiles:
    def test_intervals_renumbered_clockwise(self, grid5):
        G, terminals = grid5
        curve = BoundaryCurve(G, terminals)
        document = parse_demand(
            '{"intervals": [[24, 4], [0, 20]], "demand": [[1, 0, 3]]}'
        )
        system, demand = demand_from_file(curve, document)
        assert [(iv.start, iv.end) for iv in system.intervals] == [(0, 8), (10, 18)]
        assert demand.values == {(0, 1): 3}

    def test_unknown_end(self, grid5):
        G, terminals = grid5
        curve = BoundaryCurve(G, terminals)
        with pytest.raises(InstanceFormatError):
            demand_from_file(curve, DemandFile(intervals=[(12, 0)], demand=[]))

    def test_unknown_interval_index(self, grid5):
        G, terminals = grid5
        curve = BoundaryCurve(G, terminals)
        with pytest.raises(InstanceFormatError):
            demand_from_file(curve, DemandFile(intervals=[(0, 20)], demand=[(0, 3, 1)]))


@pytest.mark.integration
class TestCertificates:
    def test_verdict_round_trip(self, grid5):
        G, terminals = grid5
        verdict = main_solve(G, terminals, 2, 1)
        digest = instance_digest(instance_from_embedding(G, terminals))
        cert = parse_certificate(serialize(certificate_from_verdict(verdict, 2, 1, digest)))
        assert cert.kind == "yes"
        assert cert.depth_bound is None
        assert verdict_from_certificate(cert).paths == verdict.paths

    def test_decision_keeps_bound(self, bowtie):
        G, terminals = bowtie
        result = decide_far_paths(G, terminals, 2, 0)
        cert = certificate_from_decision(result, 2, 0, "d")
        assert cert.kind == "no"
        assert cert.depth_bound == 1
        restored = verdict_from_certificate(cert)
        assert [b.vertices for b in restored.blobs] == [frozenset({2})]

    def test_linkage_certificate(self):
        G, _ = grid(4)
        curve = BoundaryCurve(G, make_terminals(G, [12, 0], [15, 3], strict=False))
        pairs = [(12, 15), (0, 3)]
        system, demand = pairs_demand(curve, pairs)
        outcome = solve_pairs(curve, 2, pairs)
        assert isinstance(outcome, Linkage)
        cert = certificate_from_linkage(outcome, system, demand, 2, "d", curve.order)
        cert = parse_certificate(serialize(cert))
        assert cert.boundary_order == [0, 12, 15, 3]
        system2, demand2 = demand_from_certificate(cert, curve.size)
        assert system2.intervals == system.intervals
        assert demand2.values == demand.values
        assert linkage_from_certificate(cert, system2, demand2).paths == outcome.paths

    def test_obstruction_certificate(self):
        G, _ = grid(4)
        curve = BoundaryCurve(G, make_terminals(G, [12, 0], [15, 3], strict=False))
        pairs = [(12, 15), (0, 3)]
        system, demand = pairs_demand(curve, pairs)
        outcome = solve_pairs(curve, 3, pairs)
        cert = parse_certificate(
            serialize(certificate_from_linkage(outcome, system, demand, 3, "d", curve.order))
        )
        assert cert.kind == "obstruction"
        assert obstruction_from_certificate(cert) == outcome

    def test_verdict_needs_yes_or_no(self):
        cert = parse_certificate('{"kind": "linkage", "c": 1, "digest": "d"}')
        with pytest.raises(InstanceFormatError):
            verdict_from_certificate(cert)
