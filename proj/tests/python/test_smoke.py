import json

import pytest

import iif


def pair_doc(field, involution, a, f):
    return json.dumps(
        {
            "version": "iif/1",
            "field": field,
            "involution": involution,
            "matrix_a": a,
            "matrix_f": f,
        }
    )


HYPERBOLIC = pair_doc(
    "complex_float",
    "conjugation",
    [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]],
    [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
)


def test_check_reports_isometry():
    rep = json.loads(iif.check(HYPERBOLIC))
    assert rep["kind"] == "structure_report"
    assert "isometric" in rep["op_kinds"]
    assert rep["nondegenerate"]


def test_canon_recovers_hyperbolic_block():
    cf = json.loads(iif.canon(HYPERBOLIC, "isometric"))
    assert cf["mode"] == "float"
    assert len(cf["summands"]) == 1
    s = cf["summands"][0]
    assert s["family"] == "iso_hyperbolic"
    assert s["n"] == 1
    lam = s["params"]["lambda"]
    assert abs(lam[0] - 2.0) < 1e-8 and abs(lam[1]) < 1e-8


def test_roundtrip_and_brute_verify():
    doc, kind, truth = iif.random_instance("selfadjoint", dim=6, seed=11, conjugate=True)
    canonical = iif.canon(doc, kind, witness=True)
    ok, diff = iif.brute_verify(doc, canonical)
    assert ok, diff
    got = json.loads(canonical)["summands"]
    want = json.loads(truth)
    assert len(got) == len(want)


def test_exact_phi_block():
    out = json.loads(iif.phi(["1", "0"], 1, 1))
    assert out["m"] == [["1", "0"], ["0", "-1"]]
    exists, _ = iif.phi_exists(["-5"], 1, -1)
    assert not exists


def test_iso_and_group():
    res = json.loads(iif.iso(HYPERBOLIC, HYPERBOLIC, "isometric"))
    assert res["isomorphic"]

    form = pair_doc(
        "complex_float",
        "conjugation",
        [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
         [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
         [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]],
        [[[0.0, 2.0], [0.0, 0.0], [0.0, 0.0]],
         [[0.0, 0.0], [-3.0, 0.0], [0.0, 0.0]],
         [[0.0, 0.0], [0.0, 0.0], [5.0, 0.0]]],
    )
    g = json.loads(iif.group(form, "group"))
    assert g["rendering"] == "U(D) = U(1,1) x U(1,0)"


def test_domain_errors_surface_as_value_error():
    bad = pair_doc(
        "complex_float",
        "conjugation",
        [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
        [[[0.0, 0.0], [2.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
    )
    with pytest.raises(ValueError):
        iif.diag(bad)
