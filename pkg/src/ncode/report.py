"""Report structure shared by the CLI commands.

A report is a command echo plus a payload and a list of checks; the JSON
form round-trips losslessly, and the exit code is 0 exactly when every
non-frontier check passed.  Timing lives in a single field so comparisons
can canonicalize it away.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class CheckRow:
    claim: str
    passed: bool
    frontier: bool = False
    details: str = ""

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "frontier": self.frontier,
            "details": self.details,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "CheckRow":
        return cls(
            claim=obj["claim"],
            passed=bool(obj["passed"]),
            frontier=bool(obj.get("frontier", False)),
            details=obj.get("details", ""),
        )


@dataclass
class Report:
    command: str
    payload: dict = field(default_factory=dict)
    checks: list[CheckRow] = field(default_factory=list)
    seed: Optional[int] = None
    workers: int = 1
    elapsed_ms: int = 0

    @property
    def exit_code(self) -> int:
        return 0 if all(c.passed or c.frontier for c in self.checks) else 1

    def add(self, claim: str, passed: bool, frontier: bool = False, details: str = ""):
        self.checks.append(CheckRow(claim, passed, frontier, details))

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "payload": self.payload,
            "checks": [c.to_json_dict() for c in self.checks],
            "seed": self.seed,
            "workers": self.workers,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        obj = json.loads(text)
        return cls(
            command=obj["command"],
            payload=obj["payload"],
            checks=[CheckRow.from_json_dict(c) for c in obj["checks"]],
            seed=obj["seed"],
            workers=obj["workers"],
            elapsed_ms=obj["elapsed_ms"],
        )

    def canonical_json(self) -> str:
        """JSON with the timing field zeroed, for determinism comparisons."""
        obj = self.to_json_dict()
        obj["elapsed_ms"] = 0
        return json.dumps(obj, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for key, value in self.payload.items():
            if isinstance(value, str) and "\n" in value:
                lines.append(f"{key}:")
                lines.append(value)
            else:
                lines.append(f"{key}: {value}")
        if self.checks:
            lines.append("")
            for c in self.checks:
                mark = "PASS" if c.passed else ("info" if c.frontier else "FAIL")
                extra = f"  [{c.details}]" if c.details else ""
                lines.append(f"[{mark}] {c.claim}{extra}")
            bad = sum(1 for c in self.checks if not (c.passed or c.frontier))
            lines.append("")
            lines.append(
                f"{len(self.checks)} checks, {bad} failing"
                + ("" if bad else " - all good")
            )
        return "\n".join(lines)
