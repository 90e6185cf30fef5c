"""Command-line interface: payloads, exit codes, and determinism."""

import json

import pytest

from msflow import cli
from msflow.manifolds import GraphManifold, Gluing, SeifertPiece

SWAP = ((0, 1), (1, 0))


def write_graph(tmp_path, name="graph.json", pieces=None, edges=None):
    g = GraphManifold(
        pieces or (SeifertPiece(0, 1, ()), SeifertPiece(0, 1, ())),
        edges or (Gluing(0, 0, 1, 0, SWAP),))
    path = tmp_path / name
    path.write_text(json.dumps(g.to_json()))
    return path


class TestBound:
    @pytest.mark.parametrize("euler,want", [(2, 10), (-3, 10), (0, 10), (1, 8), (-1, 8)])
    def test_seifert(self, euler, want):
        out = cli.run(["bound", "seifert", "--genus", "0", "--euler", str(euler)])
        assert out.exit_code == 0 and out.payload == {"bound": want}

    def test_seifert_with_fibers(self):
        out = cli.run(["bound", "seifert", "--genus", "3", "--euler", "5",
                       "--fibers", "2/1;3/1"])
        assert out.payload == {"bound": 28}

    def test_graph(self, tmp_path):
        path = write_graph(tmp_path)
        out = cli.run(["bound", "graph", str(path)])
        assert out.exit_code == 0 and out.payload == {"bound": 14}

    def test_sum(self, tmp_path):
        path = write_graph(tmp_path)
        out = cli.run(["bound", "sum", str(path), str(path)])
        assert out.payload == {"bound": 22}
        assert cli.run(["bound", "sum"]).payload == {"bound": 6}

    def test_missing_file(self):
        out = cli.run(["bound", "graph", "no-such-file.json"])
        assert out.exit_code == 1 and "error" in out.payload

    def test_bad_flag_value(self):
        out = cli.run(["bound", "seifert", "--genus", "0", "--euler", "x"])
        assert out.exit_code == 1 and "error" in out.payload


class TestPlan:
    def test_maximal_matches_bound(self):
        out = cli.run(["plan", "seifert", "--genus", "0", "--euler", "2", "--class", "max"])
        assert out.exit_code == 0
        assert out.payload["total"] == 10
        assert out.payload["d2"] == {"lambda": [], "alpha": [2]}

    def test_explicit_class(self):
        out = cli.run(["plan", "seifert", "--genus", "1", "--euler", "3",
                       "--fibers", "2/1", "--class", "lambda=4;alpha=2,-3"])
        assert out.exit_code == 0
        assert out.payload["d2"] == {"lambda": [4], "alpha": [2, -3]}

    def test_degenerate_sphere_cell_fails_honestly(self):
        """(g=0, |e|=1, one fiber): construction needs 10, formula says 8."""
        out = cli.run(["plan", "seifert", "--genus", "0", "--euler", "1",
                       "--fibers", "2/1", "--class", "max"])
        assert out.exit_code == 2
        assert out.payload["total"] == 10 and out.payload["bound"] == 8

    def test_out_file(self, tmp_path):
        target = tmp_path / "ledger.json"
        out = cli.run(["plan", "seifert", "--genus", "0", "--euler", "2",
                       "--class", "max", "--out", str(target)])
        assert out.exit_code == 0
        assert json.loads(target.read_text()) == out.payload

    def test_graph_plan(self, tmp_path):
        path = write_graph(tmp_path)
        out = cli.run(["plan", "graph", str(path), "--class", "max"])
        assert out.exit_code == 0 and out.payload["total"] == 14

    def test_graph_rejects_nonzero_cycles(self, tmp_path):
        pieces = (SeifertPiece(0, 2, ()), SeifertPiece(0, 2, ()))
        edges = (Gluing(0, 0, 1, 0, SWAP), Gluing(0, 1, 1, 1, SWAP))
        path = write_graph(tmp_path, pieces=pieces, edges=edges)
        spec = json.dumps({
            "pieces": [{"lambda": [], "alpha": [2], "tau": [2]},
                       {"lambda": [], "alpha": [2], "tau": [2]}],
            "cycles": [1],
        })
        out = cli.run(["plan", "graph", str(path), "--class", spec])
        assert out.exit_code == 1
        assert "cycle coordinate 0" in out.payload["error"]

    def test_bad_class_text(self):
        out = cli.run(["plan", "seifert", "--genus", "0", "--euler", "2",
                       "--class", "alpha=2"])
        assert out.exit_code == 1
        out = cli.run(["plan", "seifert", "--genus", "0", "--euler", "2",
                       "--class", "lambda=;alpha=two"])
        assert out.exit_code == 1

    def test_wrong_shape_class(self):
        out = cli.run(["plan", "seifert", "--genus", "0", "--euler", "2",
                       "--class", "lambda=1;alpha=2"])
        assert out.exit_code == 1


class TestHomology:
    def test_poincare_sphere(self):
        out = cli.run(["homology", "seifert", "--genus", "0", "--euler", "-1",
                       "--fibers", "2/1;3/1;5/1"])
        assert out.exit_code == 0
        assert out.payload["group"]["group"] == "0"

    def test_class_report(self):
        out = cli.run(["homology", "seifert", "--genus", "0", "--euler", "3",
                       "--class", "max"])
        assert out.payload["maximal"] is True
        assert out.payload["admissible"] is True
        # 2h generates Z/3, so the maximal class is not trivial here
        assert out.payload["trivial_in_h1"] is False

    def test_trivial_class_detected(self):
        # H1 = Z/2, so 2h dies
        out = cli.run(["homology", "seifert", "--genus", "0", "--euler", "2",
                       "--class", "lambda=;alpha=2"])
        assert out.payload["trivial_in_h1"] is True

    def test_alpha0_rejected_at_unit_euler(self):
        out = cli.run(["homology", "seifert", "--genus", "0", "--euler", "1",
                       "--fibers", "2/1", "--class", "lambda=;alpha=1,2"])
        assert out.exit_code == 1

    def test_graph_group(self, tmp_path):
        path = write_graph(tmp_path)
        out = cli.run(["homology", "graph", str(path)])
        assert out.exit_code == 0 and out.payload["group"]["group"] == "0"

    def test_graph_class_admissibility(self, tmp_path):
        pieces = (SeifertPiece(0, 2, ()), SeifertPiece(0, 2, ()))
        edges = (Gluing(0, 0, 1, 0, SWAP), Gluing(0, 1, 1, 1, SWAP))
        path = write_graph(tmp_path, pieces=pieces, edges=edges)
        spec = json.dumps({
            "pieces": [{"lambda": [], "alpha": [2], "tau": [2]},
                       {"lambda": [], "alpha": [2], "tau": [2]}],
            "cycles": [1],
        })
        out = cli.run(["homology", "graph", str(path), "--class", spec])
        assert out.exit_code == 0
        assert out.payload["admissible"] is False


class TestVerify:
    def test_torus_model(self):
        out = cli.run(["verify", "torus-model", "--lambda", "2"])
        assert out.exit_code == 0 and out.payload["pass"]

    def test_zero_lambda_is_usage_error(self):
        out = cli.run(["verify", "torus-model", "--lambda", "0"])
        assert out.exit_code == 1

    def test_csv_dump(self, tmp_path):
        target = tmp_path / "orbits.csv"
        out = cli.run(["verify", "torus-model", "--lambda", "2",
                       "--dump-csv", str(target)])
        assert out.exit_code == 0
        lines = target.read_text().splitlines()
        assert lines[0] == "orbit_b,time,t,x,z"
        assert len(lines) == 1 + 2 * 1001

    def test_tolerance_override(self, monkeypatch):
        monkeypatch.setenv("MSFLOW_TOL", "1e-18")
        out = cli.run(["verify", "torus-model", "--lambda", "2"])
        assert out.exit_code == 2
        monkeypatch.setenv("MSFLOW_TOL", "not-a-number")
        out = cli.run(["verify", "torus-model", "--lambda", "2"])
        assert out.exit_code == 1

    def test_round_handle_and_collar(self):
        assert cli.run(["verify", "round-handle"]).exit_code == 0
        assert cli.run(["verify", "collar"]).exit_code == 0

    def test_glue_demo(self):
        out = cli.run(["verify", "glue-demo"])
        assert out.exit_code == 0 and out.payload["pass"]


class TestHarness:
    def test_unknown_command(self):
        out = cli.run(["conjecture"])
        assert out.exit_code == 1

    def test_payload_determinism(self):
        argv = ["plan", "seifert", "--genus", "1", "--euler", "2", "--class", "max"]
        a = json.dumps(cli.run(argv).payload, sort_keys=True)
        b = json.dumps(cli.run(argv).payload, sort_keys=True)
        assert a == b

    def test_main_prints_single_json_document(self, capsys):
        code = cli.main(["bound", "seifert", "--genus", "0", "--euler", "2"])
        captured = capsys.readouterr()
        assert code == 0
        assert json.loads(captured.out) == {"bound": 10}
        assert captured.out.count("\n") == 1

    def test_main_keeps_diagnostics_off_stdout(self, capsys):
        code = cli.main(["bound", "graph", "no-such-file.json"])
        captured = capsys.readouterr()
        assert code == 1
        assert "error" in json.loads(captured.out)
        assert captured.err != ""

    def test_selftest_payload_has_no_timings(self):
        out = cli.run(["selftest"])
        assert out.exit_code == 0
        assert out.payload["passed"] is True
        assert len(out.payload["criteria"]) == 10
        for entry in out.payload["criteria"]:
            assert set(entry) == {"id", "name", "passed", "detail"}
        assert len(out.diagnostics) == 10
