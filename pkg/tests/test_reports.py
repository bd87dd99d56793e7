from exactlin import LinearMap, make_field
from reports import (FAIL, HYPOTHESIS_FAILS, PASS, CheckResult, dump_report, hypothesis_fails, input_hash,
                     matrix_strings, summarize, vector_strings)


def test_outcomes():
    assert CheckResult("a", True).outcome == PASS
    assert CheckResult("b", False).outcome == FAIL
    skipped = hypothesis_fails("c", "E is zero", size=0)
    assert skipped.passed and skipped.outcome == HYPOTHESIS_FAILS
    assert skipped.details == {"reason": "E is zero", "size": 0}


def test_summary_counts_hypothesis_failures_as_passed():
    checks = [CheckResult("a", True), CheckResult("b", False), hypothesis_fails("c", "skipped")]
    assert summarize(checks) == {"total": 3, "failed": ["b"], "passed": 2}
    assert summarize([], timing={"seconds": 1.0})["timing"] == {"seconds": 1.0}


def test_exact_strings():
    QQ = make_field("Q")
    half = QQ.convert(1) / QQ.convert(2)
    m = LinearMap(QQ, 2, 2, [{0: half}, {1: -QQ.one}])
    assert matrix_strings(m) == [["1/2", "0"], ["0", "-1"]]
    F3 = make_field("Fp:3")
    assert vector_strings(F3, [F3.convert(-1), F3.convert(4)]) == ["2", "1"]


def test_reports_are_deterministic():
    QQ = make_field("Q")
    check = CheckResult("m", True, {"matrix": LinearMap.identity(QQ, 1), "b": 1, "a": (1, 2)})
    first = dump_report({"z": 1, "results": [check.to_dict()]})
    assert first == dump_report({"results": [check.to_dict()], "z": 1})
    assert first.index('"a"') < first.index('"b"')
    assert input_hash("x", "y") == input_hash("x", "y") != input_hash("y", "x")
