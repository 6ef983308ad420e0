"""End-to-end tests of the command-line surface."""

import io
import json

import pytest

from lonelyrunner.cli import run


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(argv):
    code, out, err = invoke(argv)
    assert out, f"no output; stderr: {err}"
    return code, json.loads(out)


class TestGapCommand:
    def test_dirichlet_example(self):
        code, doc = invoke_json(["gap", "--speeds", "1,2,3"])
        assert code == 0
        assert doc["result"]["delta"] == {"num": 1, "den": 4}

    def test_pair_example(self):
        code, doc = invoke_json(["gap", "--speeds", "2,3"])
        assert code == 0
        assert doc["result"]["delta"] == {"num": 2, "den": 5}

    def test_grid_cross_check(self):
        code, doc = invoke_json(["gap", "--speeds", "2,3", "--grid", "600"])
        assert code == 0
        oracle = doc["result"]["grid_oracle"]
        assert oracle["resolution"] == 600
        assert oracle["value"] == {"num": 2, "den": 5}

    def test_grid_default_resolution(self):
        code, doc = invoke_json(["gap", "--speeds", "1,2", "--grid"])
        assert code == 0
        assert doc["result"]["grid_oracle"]["resolution"] == 64 * 2 * 2

    def test_bad_speeds(self):
        code, _, err = invoke(["gap", "--speeds", "1,x"])
        assert code == 1 and err

    def test_empty_speeds(self):
        code, _, err = invoke(["gap", "--speeds", ","])
        assert code == 1 and err


class TestSweepCommands:
    def test_verify(self):
        code, doc = invoke_json(["verify", "--k", "2", "--max-speed", "50"])
        assert code == 0
        assert [1, 2] in doc["result"]["tight"]
        assert doc["result"]["counterexamples"] == []

    def test_kscan(self):
        code, doc = invoke_json(["kscan", "--k", "2", "--max-coord", "6"])
        assert code == 0
        assert doc["result"]["observed_sup"] == {"num": 1, "den": 3}
        assert doc["result"]["extremal"] == [1, 2]

    def test_lonely(self):
        code, doc = invoke_json(["lonely", "--speeds", "0,1,2,3", "--focus", "0"])
        assert code == 0
        assert doc["result"]["min_separation"] == {"num": 1, "den": 4}
        assert doc["result"]["lonely"] is True

    def test_kappa(self):
        code, doc = invoke_json(["kappa", "--speeds", "3,5"])
        assert code == 0
        assert doc["result"] == {
            "lower": {"num": 1, "den": 4},
            "upper": {"num": 1, "den": 3},
            "delta": {"num": 1, "den": 2},
            "holds": True,
        }


class TestGeometryCommands:
    def test_obstruct_with_witness(self):
        code, doc = invoke_json(["obstruct", "--direction", "1,2", "--alpha", "1/3"])
        assert code == 0
        assert doc["result"]["min_scale"] == {"num": 1, "den": 3}
        assert doc["result"]["witness"] is not None

    def test_obstruct_below_scale(self):
        code, doc = invoke_json(["obstruct", "--direction", "1,2", "--alpha", "1/4"])
        assert code == 0
        assert doc["result"]["witness"] is None

    def test_billiard(self):
        code, doc = invoke_json(
            ["billiard", "--slope", "1/2", "--alpha", "1/3", "--segments", "8"]
        )
        assert code == 0
        assert doc["result"]["min_obstacle"] == {"num": 1, "den": 3}
        assert doc["result"]["contact"] == "boundary"

    def test_triangle_hit(self):
        code, doc = invoke_json(
            ["triangle", "--slope", "sqrt3*1/5", "--alpha", "1/4", "--horizon", "100"]
        )
        assert code == 0
        assert doc["result"]["hit"]["grazing"] is True

    def test_triangle_miss_exits_three(self):
        code, doc = invoke_json(
            ["triangle", "--slope", "sqrt3*1/5", "--alpha", "6/25", "--horizon", "500"]
        )
        assert code == 3  # horizon-qualified miss
        assert doc["result"]["hit"] == {"found": False}

    def test_triangle_path(self):
        code, doc = invoke_json(
            ["triangle", "--slope", "1/1", "--strikes", "10", "--horizon", "10"]
        )
        assert code == 0
        assert len(doc["result"]["path"]["segments"]) == 10

    def test_triangle_min_obstacle(self):
        code, doc = invoke_json(
            ["triangle", "--slope", "sqrt3*1/5", "--min-obstacle", "--horizon", "300"]
        )
        assert code == 0
        bracket = doc["result"]["min_obstacle"]
        assert bracket["hi"] == {"num": 1, "den": 4}

    def test_rational_slope_parsing(self):
        code, doc = invoke_json(
            ["triangle", "--slope", "3/2", "--alpha", "1/2", "--horizon", "50"]
        )
        assert code in (0, 3)
        assert doc["inputs"]["slope"]["a"] == {"num": 3, "den": 2}


class TestFieldCommands:
    def test_invisible(self):
        code, doc = invoke_json(["invisible", "--speeds", "1,2,3", "--d", "1"])
        assert code == 0
        assert doc["result"]["kept_delta"] == {"num": 2, "den": 5}

    def test_invisible_budget_exhaustion(self):
        code, _, err = invoke(
            ["invisible", "--speeds", "1,2,3", "--d", "1", "--prime-budget", "3"]
        )
        assert code == 3 and "budget" in err

    def test_conj34(self):
        code, doc = invoke_json(["conj34", "--speeds", "1,3"])
        assert code == 0
        assert doc["result"] == {"n": 4, "x": 2, "m": 1, "residues": [2, 2]}


class TestCheckCommand:
    def test_round_trip_valid(self, tmp_path):
        _, out, _ = invoke(["gap", "--speeds", "1,2,3,4"])
        path = tmp_path / "doc.json"
        path.write_text(out)
        code, doc = invoke_json(["check", str(path)])
        assert code == 0 and doc["result"]["valid"] is True

    def test_json_flag_writes_file(self, tmp_path):
        path = tmp_path / "cert.json"
        code, out, _ = invoke(["gap", "--speeds", "2,3", "--json", str(path)])
        assert code == 0 and out == ""
        doc = json.loads(path.read_text())
        assert doc["result"]["delta"] == {"num": 2, "den": 5}
        code, checked = invoke_json(["check", str(path)])
        assert code == 0 and checked["result"]["valid"] is True

    def test_detects_tampering(self, tmp_path):
        _, out, _ = invoke(["gap", "--speeds", "1,2,3,4"])
        data = json.loads(out)
        data["result"]["delta"] = {"num": 1, "den": 3}
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(data))
        code, doc = invoke_json(["check", str(path)])
        assert code == 2 and doc["result"]["valid"] is False

    def test_missing_file(self):
        code, _, err = invoke(["check", "/nonexistent/cert.json"])
        assert code == 1 and err


class TestRenderCommand:
    @pytest.mark.parametrize(
        "argv",
        [
            ["render", "--scene", "obstruction2d", "--alpha", "1/3", "--rays", "2,1/2,1/5"],
            ["render", "--scene", "square_billiard", "--slope", "1/2", "--alpha", "1/3"],
            ["render", "--scene", "triangle_billiard", "--slope", "1/1", "--strikes", "10"],
            ["render", "--scene", "triangle_tiling", "--alpha", "1/4", "--extent", "6"],
        ],
    )
    def test_scenes_emit_svg(self, argv):
        code, out, _ = invoke(argv)
        assert code == 0
        assert out.startswith("<!--")
        assert "<svg" in out and out.rstrip().endswith("</svg>")

    def test_svg_to_file(self, tmp_path):
        target = tmp_path / "figure.svg"
        code, out, _ = invoke(
            ["render", "--scene", "square_billiard", "--slope", "1/2", "--svg", str(target)]
        )
        assert code == 0 and out == ""
        assert target.read_text().startswith("<!--")

    def test_missing_slope(self):
        code, _, err = invoke(["render", "--scene", "square_billiard"])
        assert code == 1 and err


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["gap", "--speeds", "3,7,11"],
            ["verify", "--k", "2", "--max-speed", "15"],
            ["obstruct", "--direction", "2,3,5", "--alpha", "1/2"],
            ["triangle", "--slope", "sqrt3*2/7", "--alpha", "1/3", "--horizon", "200"],
            ["render", "--scene", "triangle_tiling", "--alpha", "1/4", "--extent", "5"],
        ],
    )
    def test_byte_identical_output(self, argv):
        first = invoke(argv)
        second = invoke(argv)
        assert first == second


class TestUsage:
    def test_no_subcommand(self):
        code, _, err = invoke([])
        assert code == 1 and "usage" in err.lower()

    def test_unknown_flag(self):
        code, _, err = invoke(["gap", "--nope"])
        assert code == 1 and "usage" in err.lower()

    def test_unknown_subcommand(self):
        code, _, err = invoke(["frobnicate"])
        assert code == 1
