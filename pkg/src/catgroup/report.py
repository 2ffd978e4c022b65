from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    name: str
    witness: tuple = ()
    note: str = ""

    def __str__(self):
        w = " ".join(str(x) for x in self.witness)
        s = f"{self.name}({w})"
        return f"{s}: {self.note}" if self.note else s


@dataclass
class ValidationReport:
    """Collected violations for one structure; ``value`` is set only when valid."""

    subject: str
    violations: list[Violation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    value: Any = None

    @property
    def ok(self):
        return not self.violations

    def add(self, name, witness=(), note=""):
        self.violations.append(Violation(name, tuple(witness), note))

    def names(self):
        return [v.name for v in self.violations]

    def first(self, name):
        for v in self.violations:
            if v.name == name:
                return v
        return None

    def extend(self, other: "ValidationReport", prefix=""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.name, v.witness, v.note))
        self.warnings.extend(other.warnings)

    def format(self):
        lines = [f"{self.subject}: {'valid' if self.ok else 'INVALID'}"]
        lines += [f"  warning: {w}" for w in self.warnings]
        lines += [f"  violation {v}" for v in self.violations]
        return "\n".join(lines)

    def raise_if_invalid(self):
        if not self.ok:
            from .errors import ValidationError

            raise ValidationError(self)
        return self.value


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    witness: tuple = ()
    detail: str = ""

    def line(self):
        if self.ok:
            return f"PASS {self.name}" + (f" [{self.detail}]" if self.detail else "")
        w = ",".join(str(x) for x in self.witness)
        extra = f" {self.detail}" if self.detail else ""
        return f"FAIL {self.name} ({w}){extra}"


@dataclass
class Report:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, name, ok, witness=(), detail=""):
        self.checks.append(CheckResult(name, bool(ok), tuple(witness), detail))

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def merge(self, other: "Report"):
        self.checks.extend(other.checks)
        return self

    def format(self):
        return "\n".join([f"== {self.title}"] + [c.line() for c in self.checks])

    def summary(self):
        passed = sum(c.ok for c in self.checks)
        return {
            "title": self.title,
            "checks": len(self.checks),
            "passed": passed,
            "failed": len(self.checks) - passed,
            "status": "PASS" if self.ok else "FAIL",
        }
