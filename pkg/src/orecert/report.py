"""Pass/fail certificates with machine-readable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    ok: bool
    witness: Any = None


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, ok, witness=None):
        self.checks.append(Check(name, bool(ok), witness))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_failure(self):
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def require(self):
        """Raise if any check failed."""
        bad = self.first_failure
        if bad is not None:
            raise CertificationError(
                f"{self.title}: check '{bad.name}' failed (witness: {bad.witness})"
            )
        return self

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "ok": c.ok, "witness": _jsonable(c.witness)}
                for c in self.checks
            ],
        }

    def lines(self):
        out = [f"[{'PASS' if self.passed else 'FAIL'}] {self.title}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            suffix = "" if c.ok or c.witness is None else f"  witness={c.witness}"
            out.append(f"  {mark} {c.name}{suffix}")
        return out


def _jsonable(w):
    if w is None or isinstance(w, (str, int, bool, float)):
        return w
    if isinstance(w, (list, tuple)):
        return [_jsonable(x) for x in w]
    return str(w)


class CertificationError(Exception):
    """A certified invariant failed."""
