from __future__ import annotations

import pytest

from ostrowski.suites import SUITES, SuiteResult, run_suite


def test_expected_failures_count_as_ok():
    assert SuiteResult("ultrametric", "euclid", "fail", expected="fail").ok
    assert not SuiteResult("axioms", "euclid", "fail").ok


def test_ultrametric_suite_splits_by_kind():
    rows = {r.label: r for r in run_suite("ultrametric", 20, 100, 0)}
    assert rows["euclid"].verdict == "fail" and rows["euclid"].witness == ["1", "1"]
    assert rows["padic(3)"].verdict == "pass"
    assert rows["trivial"].verdict == "pass"
    assert all(r.ok for r in rows.values())


@pytest.mark.parametrize("name", ["fundamental", "exponents"])
def test_fast_suites_pass(name):
    rows = run_suite(name, 20, 100, 0)
    assert rows and all(r.ok for r in rows), [r for r in rows if not r.ok]


def test_suite_names():
    assert set(SUITES) == {"axioms", "ultrametric", "subtractive", "roundtrip", "fundamental", "exponents"}
    with pytest.raises(ValueError):
        run_suite("bogus", 20, 100, 0)
