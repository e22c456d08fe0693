"""Pass/fail reports carrying failure witnesses instead of raising."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validator: an ordered list of named checks plus optional data."""

    subject: str
    checks: tuple = ()
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "data": _jsonable(self.data),
        }


class VerdictBuilder:
    def __init__(self, subject: str):
        self.subject = subject
        self._checks: list[Check] = []
        self.data: dict = {}

    def add(self, name: str, passed: bool, detail: str = "", witness: Any = None) -> bool:
        self._checks.append(Check(name, bool(passed), detail, witness))
        return bool(passed)

    def extend(self, verdict: Verdict, prefix: str = ""):
        for c in verdict.checks:
            self._checks.append(Check(prefix + c.name, c.passed, c.detail, c.witness))

    def build(self) -> Verdict:
        return Verdict(self.subject, tuple(self._checks), dict(self.data))


def _jsonable(x):
    from .linalg import Scalar, Matrix, Subspace

    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, Matrix):
        return [[str(a) for a in r] for r in x.rows]
    if isinstance(x, Subspace):
        return {"ambient_dim": x.ambient_dim, "basis": [[str(a) for a in r] for r in x.basis]}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x
