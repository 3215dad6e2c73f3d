"""Small result containers shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: Optional[str] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


@dataclass
class SuiteReport:
    """An ordered list of named pass/fail results plus run parameters."""

    name: str
    checks: list[CheckResult] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, details: Optional[str] = None) -> bool:
        self.checks.append(CheckResult(name, bool(passed), details))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "meta": dict(sorted(self.meta.items())),
            "checks": [c.to_dict() for c in self.checks],
        }
