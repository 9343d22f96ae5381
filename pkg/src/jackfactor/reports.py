"""Verification reports shared by all ``verify_*`` checks."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Report:
    check: str
    parameters: dict[str, Any] = field(default_factory=dict)
    probes: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def violation(self, **info: Any) -> None:
        self.violations.append(info)

    def merge(self, other: "Report") -> None:
        self.probes += other.probes
        self.violations.extend(other.violations)

    def to_json(self) -> dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        return data

    def json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, default=str)
