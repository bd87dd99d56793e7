"""Check results and JSON reports."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from exactlin import LinearMap, format_scalar

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_FAILS = "hypothesis fails"


@dataclass
class CheckResult:
    """Outcome of one verification.  ``hypothesis fails`` counts as passed."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    outcome: str = ""

    def __post_init__(self):
        if not self.outcome:
            self.outcome = PASS if self.passed else FAIL

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {"name": self.name, "outcome": self.outcome, "passed": self.passed,
                "details": jsonable(self.details)}


def hypothesis_fails(name: str, reason: str, **details) -> CheckResult:
    return CheckResult(name, True, {"reason": reason, **details}, outcome=HYPOTHESIS_FAILS)


def matrix_strings(linear_map: LinearMap) -> list[list[str]]:
    """Rows of a map's matrix as exact scalar strings."""
    field_ = linear_map.field
    rows = [[format_scalar(field_, field_.zero)] * linear_map.source_dim for _ in range(linear_map.target_dim)]
    for j, column in enumerate(linear_map.columns):
        for i, value in column.items():
            rows[i][j] = format_scalar(field_, value)
    return rows


def vector_strings(field_, values: Sequence) -> list[str]:
    return [format_scalar(field_, v) for v in values]


def jsonable(value: Any) -> Any:
    if isinstance(value, CheckResult):
        return value.to_dict()
    if isinstance(value, LinearMap):
        return matrix_strings(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def input_hash(*texts: str) -> str:
    digest = hashlib.sha256()
    for text in texts:
        digest.update(text.encode("utf-8"))
    return digest.hexdigest()


def dump_report(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=True, ensure_ascii=False)


def summarize(checks: Sequence[CheckResult], timing: Optional[dict] = None) -> dict:
    failed = [c.name for c in checks if not c.passed]
    summary = {"total": len(checks), "failed": failed, "passed": len(checks) - len(failed)}
    if timing is not None:
        summary["timing"] = timing
    return summary
