"""Verification results and the versioned JSON report format."""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

__all__ = [
    "FAIL",
    "PASS",
    "SCHEMA_VERSION",
    "SKIPPED_GUARD",
    "CheckResult",
    "Report",
    "merge_reports",
]

SCHEMA_VERSION = "qverify.report/1"
PASS = "pass"
FAIL = "fail"
SKIPPED_GUARD = "skipped: guard"


@dataclass
class CheckResult:
    """One checked relation.

    ``relation`` names the identity, ``anchor`` is the stable label of the
    claim it certifies, ``residual`` is a serialized witness on failure, and
    ``details`` holds deterministic metadata (instance counts, parameters).
    """

    relation: str
    anchor: str
    status: str
    residual: Any = None
    details: dict = field(default_factory=dict)
    runtime_ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, timing: bool = False) -> dict:
        out: dict[str, Any] = {
            "relation": self.relation,
            "anchor": self.anchor,
            "status": self.status,
        }
        if self.residual is not None:
            out["residual"] = self.residual
        if self.details:
            out["details"] = self.details
        if timing and self.runtime_ms is not None:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


def check(relation: str, anchor: str, ok: bool, residual: Any = None, **details: Any) -> CheckResult:
    return CheckResult(relation, anchor, PASS if ok else FAIL, None if ok else residual, dict(details))


@dataclass
class Report:
    """An ordered list of results plus the configuration that produced them."""

    command: str
    config: dict
    results: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.results.extend(results)

    @property
    def all_passed(self) -> bool:
        return all(r.status == PASS for r in self.results)

    @property
    def has_failure(self) -> bool:
        return any(r.status == FAIL for r in self.results)

    @property
    def has_guard_skip(self) -> bool:
        return any(r.status == SKIPPED_GUARD for r in self.results)

    def to_json(self, timing: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "summary": {
                "total": len(self.results),
                "passed": sum(r.status == PASS for r in self.results),
                "failed": sum(r.status == FAIL for r in self.results),
                "skipped": sum(r.status == SKIPPED_GUARD for r in self.results),
            },
            "notes": list(self.notes),
            "results": [r.to_json(timing) for r in self.results],
        }

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2) + "\n"

    def text(self) -> str:
        lines = [f"{self.command}: {self.to_json()['summary']}"]
        for r in self.results:
            line = f"[{r.status}] {r.relation}"
            if r.residual is not None:
                line += f"  residual={json.dumps(r.residual, sort_keys=True)}"
            lines.append(line)
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def merge_reports(docs: Iterable[dict]) -> dict:
    """Merge report documents into one, preserving input order."""
    docs = list(docs)
    for d in docs:
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
    results = []
    notes: list[str] = []
    commands = []
    for d in docs:
        commands.append({"command": d["command"], "config": d["config"]})
        for r in d["results"]:
            entry = dict(r)
            entry["source"] = d["command"]
            results.append(entry)
        notes.extend(n for n in d.get("notes", []) if n not in notes)
    return {
        "schema": SCHEMA_VERSION,
        "command": "report merge",
        "config": {"inputs": commands},
        "summary": {
            "total": len(results),
            "passed": sum(r["status"] == PASS for r in results),
            "failed": sum(r["status"] == FAIL for r in results),
            "skipped": sum(r["status"] == SKIPPED_GUARD for r in results),
        },
        "notes": notes,
        "results": results,
    }
