"""Verification reports: a list of (description, expected, computed, pass)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: _order_key(kv[0]))}
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x, key=_order_key)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def _order_key(v: Any) -> tuple:
    return (0, v, "") if isinstance(v, (int, float)) else (1, 0, str(v))


@dataclass
class Claim:
    description: str
    expected: Any
    computed: Any
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = self.expected == self.computed

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "expected": jsonable(self.expected),
            "computed": jsonable(self.computed),
            "pass": bool(self.passed),
        }


@dataclass
class VerificationReport:
    command: str
    statement: str
    parameters: dict = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, description: str, expected: Any, computed: Any, passed: bool | None = None) -> Claim:
        c = Claim(description, expected, computed, passed)
        self.claims.append(c)
        return c

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "statement": self.statement,
            "parameters": jsonable(self.parameters),
            "pass": self.passed,
            "claims": [c.to_dict() for c in self.claims],
        }
        if self.data:
            out["data"] = jsonable(self.data)
        if self.notes:
            out["notes"] = list(self.notes)
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_table(self) -> str:
        lines = [f"{self.command}: {self.statement}"]
        if self.parameters:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in self.parameters.items()))
        for note in self.notes:
            lines.append(f"  note: {note}")
        width = max((len(c.description) for c in self.claims), default=0)
        for c in self.claims:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  [{mark}] {c.description.ljust(width)}  expected={_short(c.expected)}  computed={_short(c.computed)}"
            )
        for k, v in self.data.items():
            lines.append(f"  {k}: {_short(jsonable(v), 200)}")
        lines.append(f"  overall: {'PASS' if self.passed else 'FAIL'}")
        if self.elapsed_ms is not None:
            lines.append(f"  elapsed: {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)


def _short(v: Any, limit: int = 60) -> str:
    s = json.dumps(jsonable(v), ensure_ascii=False)
    return s if len(s) <= limit else s[: limit - 3] + "..."
