"""
Command line tests: each subcommand run through ``cli.main`` with a tmp dir.
"""
import json

import pytest

import cli

RINGS_PAIRS = "336:349,224:237,112:125,0:13"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr().out


@pytest.fixture
def grid_file(tmp_path, capsys):
    path = tmp_path / "grid5.json"
    code, out = run(capsys, "gen", "--family", "grid", "--n", 5, "--out", path)
    assert code == 0
    assert out.strip() == str(path)
    return path


@pytest.fixture
def rings_file(tmp_path, capsys):
    path = tmp_path / "rings.json"
    run(capsys, "gen", "--family", "rings", "--n", 3, "--out", path)
    return path


@pytest.mark.cli
class TestValidateAndGenerate:
    def test_validate(self, capsys, bowtie_file):
        code, out = run(capsys, "validate", bowtie_file)
        assert code == 0
        assert "5 vertices, 6 edges" in out

    def test_missing_file(self, capsys, tmp_path):
        code = cli.main(["validate", str(tmp_path / "absent.json")])
        assert code == 2
        assert "error: cannot read" in capsys.readouterr().err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{\n  "vertices": [0],\n  "S": [0]\n  "T": [0]\n}')
        code = cli.main(["validate", str(path)])
        assert code == 2
        assert "line 4" in capsys.readouterr().err

    def test_missing_parameters(self, capsys, bowtie_file):
        code = cli.main(["solve", str(bowtie_file)])
        assert code == 2


@pytest.mark.cli
class TestSolveAndDecide:
    def test_grid_solve_and_check(self, capsys, grid_file, tmp_path):
        cert = tmp_path / "grid.cert.json"
        code, out = run(capsys, "solve", grid_file, "--k", 2, "--c", 1, "--cert", cert)
        assert code == 0
        assert out.startswith("YES")
        assert out.count("path ") == 3
        code, out = run(capsys, "check", grid_file, cert)
        assert code == 0
        assert out.strip() == "OK yes"

    def test_decide_no_exit_code(self, capsys, bowtie_file):
        code, out = run(capsys, "decide", bowtie_file, "--k", 2, "--c", 0)
        assert code == 1
        assert out.startswith("NO")

    def test_decide_certificate_checks(self, capsys, bowtie_file, tmp_path):
        cert = tmp_path / "bowtie.cert.json"
        run(capsys, "decide", bowtie_file, "--k", 2, "--c", 0, "--cert", cert)
        code, out = run(capsys, "check", bowtie_file, cert)
        assert code == 0
        assert out.strip() == "OK no"

    def test_tampered_blobs_fail(self, capsys, bowtie_file, tmp_path):
        cert = tmp_path / "bowtie.cert.json"
        run(capsys, "decide", bowtie_file, "--k", 2, "--c", 0, "--cert", cert)
        data = json.loads(cert.read_text())
        data["blobs"] = [{"vertices": [0], "edges": [], "diameter": 0}]
        cert.write_text(json.dumps(data))
        code, out = run(capsys, "check", bowtie_file, cert)
        assert code == 2
        assert out.startswith("FAILED NotSeparating")

    def test_certificate_for_other_instance(self, capsys, bowtie_file, grid_file, tmp_path):
        cert = tmp_path / "grid.cert.json"
        run(capsys, "solve", grid_file, "--k", 2, "--c", 1, "--cert", cert)
        code, out = run(capsys, "check", bowtie_file, cert)
        assert code == 2
        assert out.startswith("FAILED DigestMismatch")


@pytest.mark.cli
class TestLinkage:
    def test_nested_pairs_obstruct(self, capsys, rings_file, tmp_path):
        cert = tmp_path / "rings.cert.json"
        code, out = run(
            capsys, "linkage", rings_file, "--c", 3, "--pairs", RINGS_PAIRS, "--cert", cert
        )
        assert code == 0
        assert out.startswith("OBSTRUCTION")
        assert "boom length 3" in out
        code, out = run(capsys, "check", rings_file, cert)
        assert code == 0
        assert out.strip() == "OK obstruction"

    def test_three_pairs_link(self, capsys, rings_file, tmp_path):
        cert = tmp_path / "rings.cert.json"
        pairs = ",".join(RINGS_PAIRS.split(",")[:3])
        code, out = run(
            capsys, "linkage", rings_file, "--c", 3, "--pairs", pairs, "--cert", cert
        )
        assert code == 0
        assert out.startswith("LINKAGE")
        code, out = run(capsys, "check", rings_file, cert)
        assert code == 0
        assert out.strip() == "OK linkage"

    def test_bad_pair_syntax(self, capsys, rings_file):
        code = cli.main(["linkage", str(rings_file), "--c", "1", "--pairs", "0-13"])
        assert code == 2


@pytest.mark.cli
class TestExport:
    def test_dot_to_stdout(self, capsys, bowtie_file):
        code, out = run(capsys, "export", bowtie_file)
        assert code == 0
        assert out.startswith('graph "bowtie" {')
        assert "  2 -- 3;" in out

    def test_dot_marks_certificate(self, capsys, grid_file, tmp_path):
        cert = tmp_path / "grid.cert.json"
        run(capsys, "solve", grid_file, "--k", 2, "--c", 1, "--cert", cert)
        out_path = tmp_path / "grid.dot"
        code, _ = run(capsys, "export", grid_file, "--cert", cert, "--out", out_path)
        assert code == 0
        assert "penwidth=3" in out_path.read_text()
