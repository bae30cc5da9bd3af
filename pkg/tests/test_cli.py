"""Command-line interface: reports, exit codes, determinism, plotting."""

import json
from pathlib import Path

import pytest

from conftest import PREDICATES, instance_path, run_cli, run_cli_json


ALL_NAMES = sorted(PREDICATES)


class TestCuts:
    def test_canonical_instance_exact(self):
        code, report = run_cli_json(["cuts", instance_path("t_prime_soc")])
        assert code == 0
        assert report["command"] == "cuts"
        assert report["instance"] == "t_prime_soc"
        assert len(report["cuts"]) == 2
        displays = [c["display"] for c in report["cuts"]]
        assert displays == ["x1 >= 1", "x2 >= 1"]
        pis = [(c["pi"], c["rhs"]) for c in report["cuts"]]
        assert pis == [(["1", "0"], "1"), (["0", "1"], "1")]
        assert report["all_valid"] is True
        for c in report["cuts"]:
            assert c["oracle"]["valid"] is True

    def test_quadratic_and_soc_descriptions_share_hash(self):
        _, a = run_cli_json(["cuts", instance_path("t_prime")])
        _, b = run_cli_json(["cuts", instance_path("t_prime_soc")])
        assert a["instance_hash"] == b["instance_hash"]

    def test_query_cuts_included(self):
        code, report = run_cli_json(["cuts", instance_path("t_prime")])
        assert code == 0
        kinds = [c["derivation"]["kind"] for c in report["cuts"]]
        assert kinds == [
            "hyperbola-branch-cut",
            "hyperbola-branch-cut",
            "sign-split-projection",
            "aggregation-round",
        ]
        displays = [c["display"] for c in report["cuts"]]
        assert displays == ["x1 >= 1", "x2 >= 1", "x1 >= 1", "x1 >= 0"]

    def test_ellipse_without_queries_emits_nothing(self):
        code, report = run_cli_json(["cuts", instance_path("ellipse_skew")])
        assert code == 0
        assert report["cuts"] == []
        assert report["all_valid"] is True

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_corpus_cuts_all_valid(self, name):
        code, report = run_cli_json(["cuts", instance_path(name)])
        assert code == 0
        assert report["all_valid"] is True

    def test_box_flag_overrides(self):
        code, report = run_cli_json(
            ["cuts", instance_path("t_prime_soc"), "--box", "-5", "5", "-5", "5"]
        )
        assert code == 0
        assert report["box"] == [-5, 5, -5, 5]
        assert report["cuts"][0]["oracle"]["checked_points"] == 25

    def test_instance_box_used(self):
        _, report = run_cli_json(["cuts", instance_path("hyperbola_translated")])
        assert report["box"] == [0, 30, 0, 30]


class TestCertify:
    def test_band_strip(self):
        code, report = run_cli_json(["certify", instance_path("band_strip")])
        assert code == 0
        assert report["status"] == "certified"
        assert report["variant"] == "empty"
        assert [c["display"] for c in report["cuts"]] == ["x1 >= 1", "-x1 >= 0"]
        assert report["jointly_infeasible"] is True
        assert [p["kind"] for p in report["pathways"]] == [
            "HalfSpaceRounding",
            "HalfSpaceRounding",
        ]
        assert report["band"] == {
            "pi": ["1", "0"],
            "lower": "1/5",
            "upper": "4/5",
            "floor_level": 0,
        }
        for c in report["cuts"]:
            assert c["oracle"]["valid"] is True

    def test_disc_tiny(self):
        code, report = run_cli_json(["certify", instance_path("disc_tiny")])
        assert code == 0
        assert [(c["pi"], c["rhs"]) for c in report["cuts"]] == [
            (["0", "1"], "1"),
            (["0", "-1"], "0"),
        ]
        assert report["jointly_infeasible"] is True
        assert [p["kind"] for p in report["pathways"]] == [
            "BoundedOuterApprox",
            "BoundedOuterApprox",
        ]

    def test_not_empty_is_an_error(self):
        code, report = run_cli_json(["certify", instance_path("t_prime")])
        assert code == 1
        assert report["status"] == "error"
        assert report["error"] == "NotEmptyError"
        assert "the integer point (1, 1)" in report["message"]

    def test_wide_integer_free_disc_not_proven(self):
        code, report = run_cli_json(["certify", instance_path("disc_support")])
        assert code == 1
        assert report["status"] == "not-proven"
        assert any("band" in r for r in report["reasons"])


class TestFace:
    def test_instance_face_query(self):
        code, report = run_cli_json(["face", instance_path("t_prime")])
        assert code == 0
        assert report["status"] == "certified"
        assert report["variant"] == "face"
        (cut,) = report["cuts"]
        assert (cut["pi"], cut["rhs"]) == (["1", "0"], "1")
        (path,) = report["pathways"]
        assert path["kind"] == "HyperbolaCut"
        assert report["tight_point"] == [1, 1]
        assert report["tight_ray"] == ["0", "1"]
        assert cut["oracle"]["valid"] is True

    def test_flag_override(self):
        code, report = run_cli_json(
            ["face", instance_path("t_prime_soc"), "--pi", "1", "1", "--pi0", "2"]
        )
        assert code == 0
        (path,) = report["pathways"]
        assert path["kind"] == "BoundedOuterApprox"
        assert report["tight_point"] == [1, 1]
        assert "tight_ray" not in report

    def test_halfspace_rounding_face(self):
        code, report = run_cli_json(["face", instance_path("parabola_halfplane")])
        assert code == 0
        (path,) = report["pathways"]
        assert path["kind"] == "HalfSpaceRounding"
        assert path["alpha"] == "7/3"
        assert path["ceil"] == 3
        (cut,) = report["cuts"]
        assert (cut["pi"], cut["rhs"]) == (["1", "0"], "3")

    def test_mixed_instance_face(self):
        code, report = run_cli_json(["face", instance_path("mixed_hyperbola_halfplane")])
        assert code == 0
        (path,) = report["pathways"]
        assert path["kind"] == "HyperbolaCut"
        assert report["tight_point"] == [1, 2]

    def test_not_a_face_reports_true_rhs(self):
        code, report = run_cli_json(
            ["face", instance_path("t_prime"), "--pi", "1", "0", "--pi0", "0"]
        )
        assert code == 1
        assert report["status"] == "error"
        assert report["error"] == "NotAFaceError"
        assert report["true_rhs"] == "1"

    def test_invalid_inequality(self):
        code, report = run_cli_json(
            ["face", instance_path("t_prime"), "--pi", "1", "0", "--pi0", "2"]
        )
        assert code == 1
        assert report["error"] == "InvalidInequalityError"

    def test_face_requires_query_or_flags(self):
        code, report = run_cli_json(["face", instance_path("parabola")])
        assert code == 2
        assert report["error"] == "MalformedInputError"


class TestCheckFunction:
    def test_admissible_passes(self):
        code, report = run_cli_json(
            ["check-function", "--gamma", "0,1/2,1/2", "--j", "1", "--samples", "400"]
        )
        assert code == 0
        assert report["admissible"] is True
        assert report["domain"] == "gamma-j"
        assert report["all_pass"] is True
        names = [c["property"] for c in report["checks"]]
        assert names == [
            "zero-at-origin",
            "subadditive",
            "cone-monotone",
            "positive-on-cone",
        ]
        assert all(c["violations"] == 0 for c in report["checks"])

    def test_inadmissible_fails(self):
        code, report = run_cli_json(["check-function", "--gamma", "0,1,1", "--j", "2"])
        assert code == 1
        assert report["admissible"] is False
        assert "axis weight" in report["reason"]

    def test_orthant_monotone_counterexample_reported(self):
        code, report = run_cli_json(
            [
                "check-function",
                "--gamma",
                "(0, 1, 1)",
                "--j",
                "1",
                "--samples",
                "2500",
                "--orthant-monotone",
            ]
        )
        assert code == 0  # the counterexample is expected, not a failure
        cx = report["orthant_monotone_counterexample"]
        assert cx["f_u"] < cx["f_v"]

    def test_seed_echoed(self):
        _, report = run_cli_json(
            ["check-function", "--gamma", "0,0,1", "--j", "1", "--seed", "7",
             "--samples", "200"]
        )
        assert report["seed"] == 7


class TestExitCodes:
    def test_missing_file_is_2(self):
        code, report = run_cli_json(["cuts", instance_path("no_such_instance")])
        assert code == 2
        assert report["error"] == "MalformedInputError"

    def test_malformed_json_is_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{", encoding="utf-8")
        code, report = run_cli_json(["cuts", str(bad)])
        assert code == 2
        assert report["error"] == "MalformedInputError"

    def test_unsupported_construct_is_3(self, tmp_path):
        doc = {
            "schema": "conecuts-instance/1",
            "name": "weird",
            "blocks": [
                {
                    "type": "soc",
                    "rows": [["1", "0"], ["0", "1"], ["1", "1"], ["1", "-1"]],
                    "rhs": ["0", "0", "0", "0"],
                }
            ],
        }
        path = tmp_path / "weird.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, report = run_cli_json(["cuts", str(path)])
        assert code == 3
        assert report["error"] == "UnsupportedConstructError"

    def test_argparse_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["no-such-command"])
        assert exc.value.code == 2

    def test_success_is_0(self):
        code, _ = run_cli(["hull", instance_path("t_prime")])
        assert code == 0


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["cuts", instance_path("t_prime")],
            ["certify", instance_path("band_strip")],
            ["face", instance_path("t_prime")],
            ["hull", instance_path("hyperbola_translated")],
            ["check-function", "--gamma", "0,1/2,1/2", "--j", "1",
             "--samples", "300", "--seed", "3"],
        ],
    )
    def test_byte_identical_reruns(self, argv):
        first = run_cli(argv)
        second = run_cli(argv)
        assert first == second
        first_json = run_cli(argv + ["--format", "json"])
        second_json = run_cli(argv + ["--format", "json"])
        assert first_json == second_json

    def test_out_flag_writes_file(self, tmp_path):
        target = tmp_path / "report.json"
        code, out = run_cli(
            ["cuts", instance_path("t_prime_soc"), "--format", "json",
             "--out", str(target)]
        )
        assert code == 0
        assert out == ""
        report = json.loads(target.read_text(encoding="utf-8"))
        assert report["all_valid"] is True


class TestHull:
    def test_translated_hyperbola(self):
        code, report = run_cli_json(["hull", instance_path("hyperbola_translated")])
        assert code == 0
        assert report["count"] == 756
        assert report["dimension"] == 2
        assert report["vertices"] == [[4, 3], [30, 3], [30, 30], [4, 30]]
        assert report["box"] == [0, 30, 0, 30]

    def test_empty_hull(self):
        code, report = run_cli_json(["hull", instance_path("band_strip")])
        assert code == 0
        assert report["dimension"] == -1
        assert report["count"] == 0


class TestPlot:
    def test_files_written(self, tmp_path):
        base = tmp_path / "tp"
        code, report = run_cli_json(
            ["plot", instance_path("t_prime"), "--out", str(base)]
        )
        assert code == 0
        svg = Path(report["files"][0]).read_text(encoding="utf-8")
        csv = Path(report["files"][1]).read_text(encoding="utf-8")
        assert svg.startswith("<svg")
        assert csv.splitlines()[0] == "series,label,x,y"
        assert report["bytes"] == [len(svg.encode()), len(csv.encode())]

    def test_plot_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli(["plot", instance_path("disc_mid"), "--out", str(a)])
        run_cli(["plot", instance_path("disc_mid"), "--out", str(b)])
        assert (
            Path(f"{a}.svg").read_bytes() == Path(f"{b}.svg").read_bytes()
        )
        assert (
            Path(f"{a}.csv").read_bytes() == Path(f"{b}.csv").read_bytes()
        )

    def test_empty_instance_plot(self, tmp_path):
        inst = tmp_path / "empty.json"
        inst.write_text(
            '{"schema": "conecuts-instance/1", "name": "empty", "blocks": []}\n',
            encoding="utf-8",
        )
        base = tmp_path / "empty"
        code, report = run_cli_json(["plot", str(inst), "--out", str(base)])
        assert code == 0
        assert Path(f"{base}.svg").exists()
        assert report["files"] == [f"{base}.svg", f"{base}.csv"]

    def test_gamma_slice(self, tmp_path):
        base = tmp_path / "slice"
        code, report = run_cli_json(
            ["plot", "--gamma-slice", "1", "--out", str(base)]
        )
        assert code == 0
        svg = Path(f"{base}.svg").read_text(encoding="utf-8")
        assert "<svg" in svg

    def test_degenerate_window_rejected(self, tmp_path):
        code, report = run_cli_json(
            ["plot", instance_path("t_prime"), "--out", str(tmp_path / "x"),
             "--box", "5", "-5", "0", "1"]
        )
        assert code == 2
        assert report["error"] == "MalformedInputError"
