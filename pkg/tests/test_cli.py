import io
import json
import random
from fractions import Fraction

import pytest

from polyvec import ParseError, PolyVectorField, parse_expr, parse_field, format_expr
from polyvec.cli import (
    catalog_document,
    parse_matrix,
    parse_rmatrix_terms,
    reverify_catalog_document,
    run,
)
from polyvec.classifier import cubic3_catalog, quad4_catalog
from util import CASE_A12, CASE_B2, pv, random_nonzero


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue().rstrip("\n"), err.getvalue()


def test_parse_basic_fixtures():
    assert parse_expr("x1^2*d2", 3).to_field() == PolyVectorField.single(3, 1, (2, 0, 0), (2,))
    assert parse_expr("d2/\\d1", 3).to_field() == PolyVectorField.single(3, -1, (0, 0, 0), (1, 2))
    assert parse_field("3/4*x*y*dz", 3) == PolyVectorField.single(3, Fraction(3, 4), (1, 1, 0), (3,))
    assert parse_field("t*dx - x*dt", 4) == PolyVectorField(
        4, {((1, 0, 0, 0), (2,)): 1, ((0, 1, 0, 0), (1,)): -1})
    assert parse_field("d1/\\d1", 3).is_zero()
    assert parse_field("2 + x1", 2) == PolyVectorField(
        2, {((0, 0), ()): 2, ((1, 0), ()): 1})


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError):
        parse_expr("x5*d1", 3)
    with pytest.raises(ParseError) as info:
        parse_expr("x1 + ", 3)
    assert info.value.position is not None
    with pytest.raises(ParseError):
        parse_expr("x1 ? d2", 3)
    with pytest.raises(ParseError):
        parse_expr("w*d1", 3)
    with pytest.raises(ParseError):
        parse_expr("", 3)
    with pytest.raises(ParseError):
        parse_expr("1/0", 3)


def test_format_fixtures():
    assert format_expr(pv("x1^2*d2", 3)) == "x1^2*d2"
    assert format_expr(pv("x1^2*d2", 3), alias="xyz") == "x^2*dy"
    assert format_expr(PolyVectorField.zero(3)) == "0"
    assert format_expr(pv("x1*d1 + x2*d2", 2)) == "x1*d1 + x2*d2"
    assert format_expr(pv("-d1/\\d2 - 1/2*x1*d3", 3)) == "-d1/\\d2 - 1/2*x1*d3"
    assert format_expr(PolyVectorField.constant(-3, 3)) == "-3"


CANONICAL_FIXTURES = [
    "0", "1", "-1", "5/7", "x1", "x3^4", "x1*x2*x3",
    "d1", "d1/\\d2", "d1/\\d2/\\d3", "-d2",
    "x1*d1 + x2*d2 + x3*d3", "x1^2*d2", "2*x1^2*d2",
    "-5/4*x1^3*d1/\\d2 - 11/4*x1^2*x3*d2/\\d3",
    "x2*d1/\\d2 + 3*x3*d1/\\d3", "x1*x2*d1/\\d2",
    "1/2*x1*d1", "x1^2*x2^3*x3*d1/\\d3", "7*x2^2*d3",
    "x1*d2 - x2*d1", "x3^2*d3 - x1*x3*d1 - x2*x3*d2",
    "3*x1*x3*d3 - x1^2*d1 - x1*x2*d2", "d1/\\d3",
    "x1^2*d1/\\d2/\\d3", "-2*x2*d2", "x2^2*d1", "x1*x3*d2",
    "1/3*x1*d1 + 1/3*x2*d2 + 1/3*x3*d3", "x2*x3*d1",
    "x1^2 + x2^2 + x3^2", "-x1^3*d1/\\d2", "4*d1",
    "x1*x2^2*d3", "x3*d1/\\d2", "-x2*d1/\\d3", "x1^4*d2",
    "x1^2*d2 - x1*x2*d1", "d2/\\d3", "x2^4*d1/\\d2",
    "2/3*x3^3*d3", "x1*d1/\\d2 + x2*d1/\\d3", "-7/2*x2*x3*d2",
    "x1^3*x2*d1", "x2*d3", "x3*d2", "5*x1*x2*d1/\\d2/\\d3",
    "x1*x2*x3*d1/\\d2/\\d3", "9*x3^2*d1/\\d2", "-x1*d1 + x1*d2",
]


def test_parse_format_identity_on_fixtures():
    assert len(CANONICAL_FIXTURES) >= 50
    for text in CANONICAL_FIXTURES:
        ast = parse_expr(text, 3)
        assert parse_expr(format_expr(ast.to_field()), 3) == ast


def test_parse_format_identity_on_random_fields():
    rng = random.Random(61)
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        f = random_nonzero(rng, n, rng.randint(0, 4), rng.randint(0, n), nterms=3)
        assert parse_field(format_expr(f), n) == f
        if n == 3:
            assert parse_field(format_expr(f, alias="xyz"), n) == f
        if n == 4:
            assert parse_field(format_expr(f, alias="txyz"), n) == f


def test_run_documented_examples():
    assert call(["trace", "--dim", "3", "x1*d1 + x2*d2 + x3*d3"]) [:2] == (0, "3")
    code, text, _ = call(["check-poisson", "--dim", "3", "x1*d1/\\d2 + x2*d2/\\d3"])
    assert (code, text) == (1, "false")
    assert call(["dim-irrep", "3", "2", "2"])[:2] == (0, "10")


def test_run_predicates_and_operations():
    code, text, _ = call(["check-poisson", "--dim", "3", "x*d2/\\d3 - y*d1/\\d3 + z*d1/\\d2"])
    assert (code, text) == (0, "true")
    code, text, _ = call(["rank", "--dim", "4", "d1/\\d2 + d3/\\d4"])
    assert (code, text) == (0, "4")
    code, text, _ = call(["bracket", "--dim", "3", "d1", "x1^2*d2"])
    assert (code, text) == (0, "2*x1*d2")
    code, text, _ = call(["wedge", "--dim", "3", "x1*d1", "x2*d2"])
    assert (code, text) == (0, "x1*x2*d1/\\d2")
    code, text, _ = call(["check-jacobi", "--dim", "3",
                          "x*d2/\\d3 - y*d1/\\d3 + z*d1/\\d2", "0*d1"])
    assert (code, text) == (0, "true")
    code, text, _ = call(["check-jacobi", "--dim", "3",
                          "x*d2/\\d3 - y*d1/\\d3 + z*d1/\\d2", "d1"])
    assert (code, text) == (1, "false")


def test_run_decompose_text_output():
    code, text, _ = call(["decompose", "--dim", "3", "x2*d1/\\d2 + 3*x3*d1/\\d3"])
    assert code == 0
    assert text.splitlines() == [
        "tracefree: -x2*d1/\\d2 + x3*d1/\\d3",
        "trace_part: 2*x2*d1/\\d2 + 2*x3*d1/\\d3",
        "trace: 4*d1",
    ]


def test_run_associate():
    code, text, _ = call(["associate", "--dim", "3", "--json",
                          "x2*d1/\\d2 + 3*x3*d1/\\d3"])
    assert code == 0
    payload = json.loads(text)
    assert [p["case"] for p in payload["pairs"]] == ["identity", "trace-free"]
    assert all(p["jacobi"] for p in payload["pairs"])


def test_run_error_paths():
    code, _, err = call(["trace", "--dim", "3", "x5*d1"])
    assert code == 2 and "error" in err
    code, _, err = call(["decompose", "--dim", "3", "x1*d2 + x1^2*d3"])
    assert code == 2
    assert call(["no-such-command"])[0] == 2


def test_run_selftest():
    code, text, _ = call(["selftest"])
    assert code == 0
    assert "all invariants hold" in text


def test_matrix_parsing():
    m = parse_matrix("1,0,0;0,2,0;0,0,-3")
    assert m == CASE_A12
    assert parse_matrix("0,1,0;0,0,0;0,0,0") == CASE_B2
    assert parse_matrix("1/2,0;0,-1/2").trace() == 0
    with pytest.raises(ParseError):
        parse_matrix("1,oops;0,1")


def test_rmatrix_parsing_and_command():
    r = parse_rmatrix_terms("1,1,2,2:1", 2)
    assert r.coefficients == {((1, 1), (2, 2)): 1}
    code, text, _ = call(["rmatrix", "--dim", "2", "--terms", "1,1,2,2:1"])
    assert (code, text) == (0, "x1*x2*d1/\\d2")
    code, text, _ = call(["rmatrix", "--dim", "2", "--terms", "1,2,1,2:1", "--json"])
    assert code == 0
    assert json.loads(text) == {"bivector": "0", "poisson": True}


def test_classify_cubic3_command_and_json_roundtrip():
    code, text, _ = call(["classify-cubic3", "--matrix", "1,0,0;0,2,0;0,0,-3", "--json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["format_version"] == 1
    assert doc["kernel_dimension"] == 1
    assert doc["tracefree_dimension"] == 1
    assert doc["generators"][0]["poisson"] is True
    assert doc["generators"][0]["simple"] is True
    assert doc["generators"][0]["rank"] == 2
    assert reverify_catalog_document(doc)


def test_classify_quad4_command():
    code, text, _ = call(["classify-quad4", "--json",
                          "--matrix", "1,0,0,0;0,2,0,0;0,0,4,0;0,0,0,-7"])
    assert code == 0
    doc = json.loads(text)
    assert doc["kernel_dimension"] == 4
    assert doc["constraints"] == []
    assert len(doc["generators"]) == 4
    assert reverify_catalog_document(doc)


def test_catalog_document_reverify_detects_tampering():
    doc = catalog_document(cubic3_catalog(CASE_A12))
    doc["generators"][0]["rank"] = 4
    assert not reverify_catalog_document(doc)


def test_quad4_catalog_document_has_constraints_for_nilpotent_stratum():
    from util import QUAD4_NILPOTENT
    doc = catalog_document(quad4_catalog(QUAD4_NILPOTENT))
    assert doc["kernel_dimension"] == 8
    assert doc["constraints"], "nilpotent stratum carries genuine constraints"
    assert doc["constraint_parameters"] == [f"c{i}" for i in range(1, 9)]
