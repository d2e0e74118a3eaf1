"""Structured pass/fail audit reports with stable JSON form."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

REPORT_SCHEMA_VERSION = 1


@dataclass
class AuditCheck:
    name: str
    passed: bool
    witness: object = None
    measured: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "witness": _jsonable(self.witness),
                "measured": _jsonable(self.measured)}


@dataclass
class AuditReport:
    checks: list[AuditCheck] = field(default_factory=list)
    fingerprint: str | None = None

    def add(self, name: str, passed: bool, witness=None, measured=None) -> AuditCheck:
        check = AuditCheck(name, bool(passed), witness, measured)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AuditCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"schema_version": REPORT_SCHEMA_VERSION,
                "passed": self.passed,
                "fingerprint": self.fingerprint,
                "checks": [c.to_json() for c in self.checks]}

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = "" if c.measured is None else f"  measured={c.measured}"
            wit = "" if c.passed or c.witness is None else f"  witness={c.witness}"
            lines.append(f"[{mark}] {c.name}{extra}{wit}")
        return "\n".join(lines)


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return str(obj)


def fingerprint_payload(payload) -> str:
    """Stable SHA-256 over a canonical JSON encoding."""
    blob = json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()
