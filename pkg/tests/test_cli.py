import io
import json
import subprocess
import sys

import numpy as np
import pytest

from conix import AllZeroCoefficients, ParseError, fixtures, random_conic_pair, residual_report
from conix.cli import RunConfig, main, parse_conic, run
from conix.projective import Conic, projective_distance
from conix.verify import CONFIGURATIONS

from conftest import UNIT_CIRCLE, max_coord_error

FOUR_POINT_C1_SPEC = "65,4,-538,4,80,-392,-538,-392,4772"
FOUR_POINT_C2_SPEC = "11,9,-93,9,11,-87,-93,-87,779"


def matrix_spec(C):
    return ",".join(repr(float(v.real)) for v in C.matrix.reshape(-1))


def run_json(method="both", c1=None, c2=None, **kw):
    code, text = run(RunConfig(method=method, output="json", **kw), c1, c2)
    return code, json.loads(text)


def point_triples(record):
    return [np.array([complex(*p[k]) for k in "xyw"]) for p in record["points"]]


def affine_of(record):
    return [tuple(complex(*c) for c in p["affine"]) for p in record["points"] if p["affine"]]


class TestParseConic:
    def test_unit_circle(self):
        np.testing.assert_array_equal(parse_conic("1,0,1,0,0,-1").matrix, UNIT_CIRCLE)

    def test_matrix_form(self):
        np.testing.assert_array_equal(parse_conic(FOUR_POINT_C1_SPEC).matrix, fixtures.FOUR_POINT_C1)

    def test_complex_entries(self):
        C = parse_conic("1+2i, 0, 1, 0, 0, -1-0.5i")
        assert C.a == 1 + 2j and C.f == -1 - 0.5j

    def test_wrong_arity(self):
        with pytest.raises(ParseError):
            parse_conic("1,0")

    def test_bad_token_position(self):
        with pytest.raises(ParseError) as info:
            parse_conic("1,0,abc,0,0,-1")
        assert info.value.position == 3

    def test_non_finite(self):
        with pytest.raises(ParseError):
            parse_conic("1,0,1,0,0,inf")

    def test_empty_entry(self):
        with pytest.raises(ParseError):
            parse_conic("1,,1,0,0,-1")

    def test_all_zero(self):
        with pytest.raises(AllZeroCoefficients):
            parse_conic("0,0,0,0,0,0")


class TestRunConfig:
    def test_defaults(self):
        c = RunConfig()
        assert (c.method, c.tolerance, c.output, c.filter) == ("both", 1e-8, "text", "all")

    @pytest.mark.parametrize(
        "kw", [{"tolerance": 0}, {"tolerance": -1}, {"method": "fast"}, {"output": "xml"}, {"filter": "real"}]
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            RunConfig(**kw)


class TestRun:
    def test_both_on_four_point_pair(self):
        code, rep = run_json("both", FOUR_POINT_C1_SPEC, FOUR_POINT_C2_SPEC)
        assert code == 0 and rep["status"] == "ok"
        assert rep["match"]["matched"]
        for name in ("canonical", "selfpolar"):
            assert max_coord_error(affine_of(rep["results"][name]), fixtures.FOUR_POINT_AFFINE) < 1e-3

    def test_four_point_fixture(self):
        code, rep = run_json("both", fixture="paper-4.1")
        assert code == 0 and rep["fixture"] == "paper-4.1"

    def test_selfpolar_on_touching_fixture(self):
        code, rep = run_json("selfpolar", fixture="paper-4.2")
        assert code == 0
        res = rep["results"]["selfpolar"]
        assert res["method"] == "self-polar-tangent"
        assert res["diagnostics"]["tangency"]
        doubles = [p for p in res["points"] if p["multiplicity"] == 2]
        assert len(doubles) == 2
        for p in doubles:
            assert np.allclose([complex(*c) for c in p["affine"]], fixtures.TOUCHING_POINT, atol=1e-3)
        assert any("touch" in w for w in rep["warnings"])

    def test_oracle_method(self):
        code, rep = run_json("oracle", "1,0,1,0,0,-1", "1,0,1,-2,0,0")
        assert code == 0
        pts = rep["results"]["oracle"]["points"]
        assert sum(p["at_infinity"] for p in pts) == 2

    def test_degenerate_input(self):
        code, rep = run_json("both", "1,0,0,0,0,0", "1,0,1,0,0,-1")
        assert code == 1 and rep["status"] == "input-error"
        assert "DegenerateConic" in rep["error"]

    def test_parse_error_exit(self):
        code, rep = run_json("both", "1,0", "1,0,1,0,0,-1")
        assert code == 1 and "ParseError" in rep["error"]

    def test_identical_conics_exit(self):
        code, _ = run_json("canonical", "1,0,1,0,0,-1", "2,0,2,0,0,-2")
        assert code == 1

    def test_missing_conic(self):
        code, _ = run_json("both", "1,0,1,0,0,-1", None)
        assert code == 1

    def test_verification_failure_exit(self):
        # an absurdly strict tolerance turns roundoff into a verification failure
        code, rep = run_json("canonical", FOUR_POINT_C1_SPEC, FOUR_POINT_C2_SPEC, tolerance=1e-30)
        assert code == 2 and rep["status"] == "verification-failed"

    def test_real_affine_filter(self):
        code, rep = run_json("canonical", "1,0,1,0,0,-1", "1,0,1,-2,0,0", filter="real-affine")
        assert code == 0
        pts = rep["results"]["canonical"]["points"]
        assert len(pts) == 2 and all(p["real_affine"] for p in pts)

    def test_json_round_trip_residuals(self):
        for spec in ((FOUR_POINT_C1_SPEC, FOUR_POINT_C2_SPEC), (None, None)):
            fixture = None if spec[0] else "paper-4.2"
            code, rep = run_json("both", *spec, fixture=fixture)
            assert code == 0
            C1, C2 = (Conic([[complex(*v) for v in row] for row in rep[k]]) for k in ("conic1", "conic2"))
            for res in rep["results"].values():
                again = residual_report(C1, C2, point_triples(res))
                reported = [p["residual"] for p in res["points"]]
                assert np.allclose(again, reported, rtol=1e-12, atol=1e-12)

    def test_wire_format_is_numeric_pairs(self):
        _, rep = run_json("canonical", fixture="paper-4.1")
        p = rep["results"]["canonical"]["points"][0]
        assert all(isinstance(v, float) for k in "xyw" for v in p[k])

    def test_asymmetric_matrix_warns_on_stderr(self):
        err = io.StringIO()
        printed = ",".join(str(int(v)) for v in fixtures.TOUCHING_C1_PRINTED.reshape(-1))
        code, _ = run(RunConfig(method="canonical"), printed, "1,0,1,0,0,-1", stderr=err)
        assert "not symmetric" in err.getvalue()
        assert code in (0, 2)

    def test_text_output(self):
        code, text = run(RunConfig(method="both", fixture="paper-4.1"))
        assert code == 0
        assert "9.28" in text and "cross-check: matched" in text
        assert "method: canonical" in text and "method: self-polar" in text

    def test_text_marks_points_at_infinity(self):
        _, text = run(RunConfig(method="canonical"), "1,0,1,0,0,-1", "1,0,1,-2,0,0")
        assert text.count("at infinity") == 2

    def test_exit_two_unreachable_on_random_corpus(self):
        for configuration in CONFIGURATIONS:
            for seed in range(40):
                pair = random_conic_pair(seed, configuration)
                code, text = run(RunConfig(method="both"), matrix_spec(pair.c1), matrix_spec(pair.c2))
                assert code == 0, (configuration, seed, text)


class TestMain:
    def test_main_returns_code(self, capsys):
        assert main(["--fixture", "paper-4.1", "--output", "json"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["match"]["matched"]

    def test_main_rejects_bad_tolerance(self, capsys):
        assert main(["--fixture", "paper-4.1", "--tol", "0"]) == 1

    def test_module_entry_point(self):
        out = subprocess.run(
            [sys.executable, "-m", "conix", "--method", "canonical", "--conic1=1,0,1,0,0,-1",
             "--conic2=1,0,1,-2,0,0", "--output", "json"],
            capture_output=True, text=True, check=False,
        )
        assert out.returncode == 0, out.stderr
        rep = json.loads(out.stdout)
        pts = point_triples(rep["results"]["canonical"])
        assert min(projective_distance(p, (0.5, np.sqrt(3) / 2, 1)) for p in pts) < 1e-12
