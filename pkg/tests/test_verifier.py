import csv
import io
import json

import pytest

from binomverify import verifier as V
from binomverify.verifier import Ceilings, CheckCase, RangeSpec, run, sweep

REPORT_KEYS = {
    "family", "params", "mode", "formula", "closed_form", "enumerated",
    "fixed_points", "config_count", "checks", "status",
}


def r(text):
    return RangeSpec.parse(text)


def test_eq3_all_modes():
    rep = run(CheckCase("eq3", {"m": 4, "k": 1, "b": 2}))
    assert rep.status == V.OK
    assert (rep.formula, rep.enumerated, rep.fixed_points, rep.closed_form) == (2, 2, 2, 2)
    assert rep.config_count > 0
    assert {c["status"] for c in rep.checks.values()} == {V.PASS}
    assert {"involutivity", "sign_reversal", "conservation", "fixed_characterization"} <= set(rep.checks)


def test_eq6_special_m1():
    rep = run(CheckCase("eq6_special", {"m": 1}))
    assert rep.ok
    assert rep.formula == rep.enumerated == rep.fixed_points == 2


def test_master1_m0():
    rep = run(CheckCase("master1", {"m": 0, "y": 0}))
    assert rep.ok
    assert rep.formula.degree == 1
    assert rep.checks["poly_equal"]["status"] == V.PASS


def test_formula_mode_skips_enumeration():
    rep = run(CheckCase("eq4", {"m": 3, "k": 1}, mode="formula"))
    assert rep.ok and rep.enumerated is None and rep.config_count is None


def test_involution_mode_only_audits():
    rep = run(CheckCase("eq5", {"m": 2, "k": 1, "b": 0, "q": 2}, mode="involution"))
    assert rep.ok and rep.enumerated is None and "involutivity" in rep.checks


def test_case_validation():
    with pytest.raises(ValueError):
        CheckCase("eq6", {"m": 3, "k": 5})
    with pytest.raises(ValueError):
        CheckCase("eq6", {"m": 3, "k": 3})
    with pytest.raises(ValueError):
        CheckCase("eq9", {"m": 1})
    with pytest.raises(ValueError):
        CheckCase("eq3", {"m": 1, "k": 0})
    with pytest.raises(ValueError):
        CheckCase("eq3", {"m": 1, "k": 0, "b": 0}, mode="fast")


def test_ceiling_skips():
    rep = run(CheckCase("eq3", {"m": 5, "k": 0, "b": 4}), ceilings=Ceilings(ground=10))
    assert rep.status == V.SKIPPED
    assert "ceiling" in rep.reason
    assert rep.formula == 1
    rep = run(CheckCase("eq6_special", {"m": 4}), ceilings=Ceilings(matrix_m=3))
    assert rep.status == V.SKIPPED


def test_q0_is_formula_only():
    rep = run(CheckCase("eq5", {"m": 2, "k": 1, "b": 0, "q": 0}))
    assert rep.status == V.SKIPPED and rep.formula == 0
    assert run(CheckCase("eq5", {"m": 2, "k": 1, "b": 0, "q": 0}, mode="formula")).ok


def test_mutation_is_caught():
    reports = sweep(["eq6_special"], {"m": r("0..5")}, bij1_column="first")
    bad = [rep for rep in reports if rep.status == V.MISMATCH]
    assert bad
    first = bad[0]
    assert first.params == {"m": 4}
    assert first.counterexample
    assert first.checks["involutivity"]["status"] == V.FAIL


def test_wrong_formula_reports_witness(monkeypatch):
    monkeypatch.setattr(V.sums, "eq3_sum", lambda m, k, b: 2**k + 1)
    rep = run(CheckCase("eq3", {"m": 2, "k": 1, "b": 0}))
    assert rep.status == V.MISMATCH
    assert rep.checks["formula_vs_closed"]["witness"] == "3 != 2"


def test_range_spec():
    assert list(r("0..3").values()) == [0, 1, 2, 3]
    assert list(r("2").values()) == [2]
    assert list(r("0..m").values(3)) == [0, 1, 2, 3]
    assert list(r("1..m-1").values(3)) == [1, 2]
    for bad in ("0..", "a..3", "1..2..3", "0..n"):
        with pytest.raises(ValueError):
            r(bad)


def test_points_order_and_validation():
    pts = list(V.points("eq4", {"m": r("0..2"), "k": r("0..m")}))
    assert pts == [
        {"m": 0, "k": 0}, {"m": 1, "k": 0}, {"m": 1, "k": 1},
        {"m": 2, "k": 0}, {"m": 2, "k": 1}, {"m": 2, "k": 2},
    ]
    with pytest.raises(ValueError):
        list(V.points("eq4", {"m": r("0..2"), "k": r("0..3")}))
    with pytest.raises(ValueError):
        list(V.points("eq4", {"m": r("0..m"), "k": r("0")}))


def test_sweeps():
    reports = sweep(["eq3"], {"m": r("0..4"), "k": r("0..m"), "b": r("0..3")})
    assert V.overall_ok(reports) and all(rep.ok for rep in reports)
    reports = sweep(["master2"], {"m": r("0..4"), "y": r("0..2"), "z": r("0..2")})
    assert all(rep.ok for rep in reports)


def test_parallel_sweep_matches_serial():
    ranges = {"m": r("0..3"), "k": r("0..m"), "b": r("0..1"), "q": r("1..2")}
    serial = sweep(["eq5"], ranges)
    parallel = sweep(["eq5"], ranges, jobs=2)
    assert [x.to_dict() for x in serial] == [x.to_dict() for x in parallel]
    # polynomial-valued reports cross process boundaries too
    ranges = {"m": r("1..3"), "k": r("0..m-1")}
    assert V.to_json(sweep(["eq6"], ranges, jobs=2)) == V.to_json(sweep(["eq6"], ranges))


def test_json_schema_and_reproducibility():
    ranges = {"m": r("1..3"), "k": r("0..m-1")}
    a = V.to_json(sweep(["eq6"], ranges))
    b = V.to_json(sweep(["eq6"], ranges))
    assert a == b
    body = json.loads(a)
    assert body["summary"]["points"] == len(body["reports"]) == 6
    for rep in body["reports"]:
        assert REPORT_KEYS <= set(rep)
        assert all(isinstance(c, str) for c in rep["formula"])
        assert isinstance(rep["config_count"], str)
        assert "volatile" not in rep
    timed = json.loads(V.to_json(sweep(["eq6"], ranges), include_elapsed=True))
    assert "elapsed" in timed["reports"][0]["volatile"]


def test_integer_fields_are_decimal_strings():
    d = run(CheckCase("eq4", {"m": 2, "k": 1})).to_dict()
    assert d["formula"] == d["closed_form"] == d["enumerated"] == d["fixed_points"] == "8"
    assert d["params"] == {"m": "2", "k": "1"}


def test_csv_is_lossless():
    reports = sweep(["eq6"], {"m": r("1..2"), "k": r("0..m-1")})
    rows = list(csv.DictReader(io.StringIO(V.to_csv(reports))))
    assert len(rows) == len(reports)
    for row, rep in zip(rows, reports):
        d = rep.to_dict()
        assert json.loads(row["formula"]) == d["formula"]
        assert json.loads(row["checks"]) == d["checks"]
        assert json.loads(row["params"]) == d["params"]
        assert row["status"] == d["status"]


def test_text_output():
    text = V.to_text(sweep(["eq4"], {"m": r("1"), "k": r("0..1")}))
    assert "eq4" in text and "OK" in text
    assert text.strip().endswith("2 points, 0 mismatches, 0 skipped")


def test_rhs_vanishing_only_checked_where_it_holds():
    assert "rhs_vanishes" in run(CheckCase("master1", {"m": 3, "y": 1})).checks
    assert "rhs_vanishes" in run(CheckCase("master2", {"m": 3, "y": 1, "z": 0})).checks
    rep = run(CheckCase("master2", {"m": 3, "y": 1, "z": 2}))
    assert rep.ok and "rhs_vanishes" not in rep.checks
