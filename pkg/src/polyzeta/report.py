"""Verification reports: ordered case lists with JSON and CSV encodings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from polyzeta.numvalue import NumValue

SCHEMA = "polyzeta-report/1"

PASS = "PASS"
FAIL = "FAIL"
INAPPLICABLE = "INAPPLICABLE"
EXPERIMENT = "EXPERIMENT"
INFO = "INFO"


def encode(value: Any):
    """JSON-ready form: Fractions as ``"p/q"``, NumValues as ``{value, err}``."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, NumValue):
        return value.to_json()
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


@dataclass
class Case:
    input: dict
    lhs: Any
    rhs: Any
    status: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, INAPPLICABLE, INFO) or (
            self.status == EXPERIMENT and self.note != "deviation")

    def to_json(self) -> dict:
        out = {"input": encode(self.input), "lhs": encode(self.lhs),
               "rhs": encode(self.rhs), "pass": self.status == PASS,
               "status": self.status}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    suite: str
    params: dict
    cases: list = field(default_factory=list)
    argv: list | None = None

    def add(self, input: dict, lhs, rhs, status, note: str = "") -> Case:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        case = Case(dict(input), lhs, rhs, status, note)
        self.cases.append(case)
        return case

    def extend(self, other: "Report") -> "Report":
        self.cases.extend(other.cases)
        return self

    def count(self, status: str) -> int:
        return sum(1 for c in self.cases if c.status == status)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        out = {"total": len(self.cases)}
        for s in (PASS, FAIL, INAPPLICABLE, EXPERIMENT, INFO):
            n = self.count(s)
            if n:
                out[s.lower()] = n
        out["ok"] = self.ok
        return out

    def to_json(self) -> dict:
        doc = {"schema": SCHEMA, "suite": self.suite, "params": encode(self.params)}
        if self.argv is not None:
            doc["argv"] = list(self.argv)
        doc["cases"] = [c.to_json() for c in self.cases]
        doc["summary"] = self.summary()
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["input", "lhs", "rhs", "status"])
        for c in self.cases:
            j = c.to_json()
            w.writerow([json.dumps(j["input"], sort_keys=True), json.dumps(j["lhs"]),
                        json.dumps(j["rhs"]), c.status])
        return buf.getvalue()

    def __repr__(self):
        return f"Report({self.suite!r}, {self.summary()})"
