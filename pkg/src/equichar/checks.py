"""Verdict records produced by the verification passes."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    name: str
    statement: str
    method: str
    passed: bool
    details: str = ""

    def __str__(self):
        mark = "PASS" if self.passed else "FAIL"
        tail = f" [{self.details}]" if self.details else ""
        return f"{mark} {self.name}: {self.statement} ({self.method}){tail}"
