import json
from fractions import Fraction

import pytest

from telex.audit import (
    SCHEMA,
    GridTooLarge,
    dobinski_eval,
    evaluate,
    exp_enclosure,
    lookup,
    parse_grid,
    registry,
    run_grid,
)
from telex.families import tilde_b

BASE_IDS = {
    "thm-3.1", "thm-3.2", "thm-3.3", "thm-4.1", "thm-4.2", "thm-4.3", "thm-4.4",
    "thm-dowling-rec", "eq-34", "thm-4.6", "thm-4.7", "thm-5.2", "eq-300", "eq-33",
    "thm-5.5", "thm-5.6", "eq-9", "thm-6.1", "thm-6.2", "eq-23", "thm-6.3", "eq-10",
    "whitney-rec", "whitney-bessel", "eq-30", "tsum",
}


def test_registry_covers_base_identities():
    ids = {d.id for d in registry() if d.variant_of is None}
    assert ids == BASE_IDS
    for d in registry():
        if d.variant_of is not None:
            assert d.variant_of in BASE_IDS


def test_lookup():
    assert lookup("eq-10") is not None
    assert lookup("thm-4.2") is not None
    assert lookup("nonexistent") is None


@pytest.mark.parametrize(
    "ident,point,lhs,rhs,status",
    [
        ("thm-3.1", dict(r=1, n=1), "3", "2", "fails"),
        ("thm-4.2", dict(r=1, lam=1, n=1), "4", "5", "fails"),
        ("eq-10", dict(m=2, r=1, n=3, x=2), "125", "125", "holds"),
    ],
)
def test_evaluate_examples(ident, point, lhs, rhs, status):
    f = evaluate(ident, point)
    assert (f.lhs, f.rhs, f.status) == (lhs, rhs, status)


def test_evaluate_rejects_bad_points():
    with pytest.raises(ValueError):
        evaluate("thm-3.2", dict(r=0, n=1))  # r >= 1 required
    with pytest.raises(ValueError):
        evaluate("thm-3.1", dict(r=1))
    with pytest.raises(KeyError):
        evaluate("nope", dict(n=1))
    # lambda is accepted as a spelling of lam; extra params are ignored
    assert evaluate("thm-4.2", {"lambda": 1, "r": 1, "n": 1, "x": 9}).status == "fails"


def test_tsum_grid():
    report = run_grid(["tsum"], {"n": range(9)})
    s = report.summary("tsum")
    assert (s.points, s.count("holds"), s.count("fails")) == (9, 9, 0)
    assert s.oracle_check.agrees


def test_eq300_counterexample():
    report = run_grid(["eq-300"], parse_grid("r=1,lambda=1,n=2"))
    (f,) = report.findings
    assert (f.lhs, f.rhs, f.status) == ("5", "6", "fails")


def test_eq23_order_8():
    report = run_grid(["eq-23"], parse_grid("r=0..2,lam=0..2,n=0..8"))
    s = report.summary("eq-23")
    assert s.points == 81 and s.count("holds") == 81


def test_parse_grid():
    assert parse_grid("r=1,lambda=0..2") == {"r": [1], "lam": [0, 1, 2]}
    for bad in ("", "q=1", "r", "r=a", "r=3..1", "r=1,r=2"):
        with pytest.raises(ValueError):
            parse_grid(bad)
    with pytest.raises(GridTooLarge):
        run_grid(["tsum"], {"n": [100]})


def test_report_json_shape_and_determinism():
    a = run_grid(["thm-3.1", "eq-30"], parse_grid("r=0..2,n=0..3"))
    b = run_grid(["eq-30", "thm-3.1"], parse_grid("n=0..3,r=0..2"), workers=2)
    assert a.dumps() == b.dumps()
    doc = json.loads(a.dumps())
    assert doc["schema"] == SCHEMA and doc["complete"] is True
    assert [i["id"] for i in doc["identities"]] == ["eq-30", "thm-3.1"]
    thm = doc["identities"][1]
    points = [tuple(f["point"].values()) for f in thm["findings"]]
    assert points == sorted(points)
    assert thm["summary"]["first_counterexample"]["point"] == {"n": 1, "r": 1}
    md = a.markdown()
    assert "| thm-3.1 |" in md and "n=1,r=1" in md


def test_incomplete_report():
    report = run_grid("all", max_seconds=0)
    assert not report.complete
    assert json.loads(report.dumps())["complete"] is False


def test_oracle_cross_checks_agree_on_default_grid():
    report = run_grid("all")
    for s in report.identities:
        if s.oracle_check is not None:
            assert s.oracle_check.agrees is not False, s.ident.id


def test_exp_enclosure():
    e = exp_enclosure(Fraction(1, 2))
    assert e.lo < e.hi and e.width < Fraction(1, 10**50)
    assert Fraction(16487212707, 10**10) < e.lo and e.hi < Fraction(16487212708, 10**10)
    with pytest.raises(ValueError):
        exp_enclosure(Fraction(-1))


def test_dobinski_examples():
    res = dobinski_eval("canonical", 0, 1, 3, 40)
    assert res.target == 11 and res.contains_target and res.enclosure.width < Fraction(1, 10**6)
    assert dobinski_eval("canonical", 0, 1, 0).contains_target
    printed = dobinski_eval("printed", 1, 1, 1, 40)
    assert printed.target == tilde_b(2, 1, 1) == 3
    assert printed.status == "fails"
    assert 6 in printed.enclosure


def test_dobinski_inconclusive_and_errors():
    assert dobinski_eval("canonical", 1, 2, 5, terms=2).status == "inconclusive"
    with pytest.raises(ValueError):
        dobinski_eval("canonical", 0, 1, 1, terms=0)
    with pytest.raises(ValueError):
        dobinski_eval("other", 0, 1, 1)
