"""Validation and identity-check reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

REPORT_SCHEMA_VERSION = 1
WITNESS_CAP = 10


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a table or map validation (first violation only)."""

    passed: bool
    law: str | None = None
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class MultiplierReport(ValidationReport):
    symmetric: bool = False
    cyclic_invariant: bool = False


@dataclass(frozen=True)
class Witness:
    law: str
    indices: tuple
    lhs: tuple
    rhs: tuple


@dataclass
class CheckReport:
    law: str
    passed: bool
    witnesses: list[Witness] = field(default_factory=list)
    elapsed: float = 0.0
    parts: list[CheckReport] = field(default_factory=list)
    note: str = ""

    def __bool__(self):
        return self.passed

    @classmethod
    def combine(cls, law: str, parts: list[CheckReport], note: str = "") -> CheckReport:
        witnesses = [w for p in parts for w in p.witnesses]
        return cls(
            law=law,
            passed=all(p.passed for p in parts),
            witnesses=witnesses,
            elapsed=sum(p.elapsed for p in parts),
            parts=list(parts),
            note=note,
        )

    @property
    def failed_laws(self) -> list[str]:
        if not self.parts:
            return [] if self.passed else [self.law]
        return [name for p in self.parts for name in p.failed_laws]

    def leaves(self) -> list[CheckReport]:
        if not self.parts:
            return [self]
        return [leaf for p in self.parts for leaf in p.leaves()]

    def part(self, law: str) -> CheckReport:
        for leaf in self.leaves():
            if leaf.law == law:
                return leaf
        if self.law == law:
            return self
        raise KeyError(law)

    def to_dict(self, render=str, timing: bool = True) -> dict[str, Any]:
        out = {
            "law": self.law,
            "passed": self.passed,
            "witnesses": [
                {
                    "law": w.law,
                    "indices": list(w.indices),
                    "lhs": [render(c) for c in w.lhs],
                    "rhs": [render(c) for c in w.rhs],
                }
                for w in self.witnesses
            ],
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000.0, 3)
        if self.note:
            out["note"] = self.note
        if self.parts:
            out["parts"] = [p.to_dict(render, timing) for p in self.parts]
        return out

    def to_text(self, render=str, indent: int = 0, timing: bool = True) -> str:
        pad = "  " * indent
        status = "PASS" if self.passed else "FAIL"
        clock = f" ({self.elapsed * 1000.0:.2f} ms)" if timing else ""
        lines = [f"{pad}{status} {self.law}{clock}"]
        if self.note:
            lines.append(f"{pad}  note: {self.note}")
        if self.parts:
            for p in self.parts:
                lines.append(p.to_text(render, indent + 1, timing))
        else:
            for w in self.witnesses:
                lhs = ", ".join(render(c) for c in w.lhs)
                rhs = ", ".join(render(c) for c in w.rhs)
                lines.append(f"{pad}  at {tuple(w.indices)}: lhs=[{lhs}] rhs=[{rhs}]")
        return "\n".join(lines)
