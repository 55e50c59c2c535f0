"""Check results and the reports that collect them.

Every verifier in the package returns a :class:`Report`; the CLI flattens
reports into JSON. A failed check always carries a witness, a passing one
never does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class Check:
    name: str
    passed: bool | None
    anchor: str = ""
    witness: Any = None
    detail: str = ""
    reason: str = ""

    def __post_init__(self):
        if self.passed is None:
            self.witness = None
        elif self.passed:
            self.witness = None
        elif self.witness is None:
            self.witness = "unspecified"

    @property
    def status(self) -> str:
        if self.passed is None:
            return SKIP
        return PASS if self.passed else FAIL

    def to_dict(self) -> dict:
        out = {"id": self.name, "anchor": self.anchor, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.status == FAIL:
            out["witness"] = _jsonable(self.witness)
        if self.status == SKIP:
            out["reason"] = self.reason
        return out


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name, passed, anchor="", witness=None, detail=""):
        check = Check(name, bool(passed), anchor, witness, detail)
        self.checks.append(check)
        return check

    def __getitem__(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "status": PASS if self.passed else FAIL,
            "checks": [c.to_dict() for c in self.checks],
        }


def _jsonable(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items.sort(key=str)
        return items
    return str(value)
