"""Check results and their deterministic rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    witness: Any = None

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def as_dict(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "witness": jsonable(self.witness)}


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, passed: bool, witness: Any = None) -> Check:
        c = Check(id, bool(passed), witness)
        self.checks.append(c)
        return c

    def extend(self, other: Report | Iterable[Check], prefix: str = "") -> None:
        items = other.checks if isinstance(other, Report) else other
        for c in items:
            self.checks.append(Check(prefix + c.id, c.passed, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(
                {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]},
                indent=1,
                sort_keys=True,
            ) + "\n"
        lines = []
        for c in self.checks:
            line = f"{c.verdict} {c.id}"
            if c.witness is not None:
                line += " " + json.dumps(jsonable(c.witness), sort_keys=True)
            lines.append(line)
        lines.append(f"{'PASS' if self.ok else 'FAIL'} overall ({len(self.checks)} checks)")
        return "\n".join(lines) + "\n"


def jsonable(x: Any) -> Any:
    """Turn witnesses (frozensets, tuples, dataclasses with ``as_json``) into sorted JSON data."""
    if hasattr(x, "as_json"):
        return x.as_json()
    if isinstance(x, (frozenset, set)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    return repr(x)
