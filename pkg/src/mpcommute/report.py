"""Structured verdicts produced by the verifiers.

A :class:`VerdictReport` is a flat list of labelled residual checks plus
optional named sub-reports (``parts``) and free-form ``notes``. The verdict
is derived from the checks, never stored separately, so it cannot drift
from the numbers it summarises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class Check:
    label: str
    residual: float
    threshold: float
    pair: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "label": self.label,
            "residual": _json_float(self.residual),
            "threshold": _json_float(self.threshold),
            "pass": self.passed,
        }
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


@dataclass(frozen=True)
class VerdictReport:
    """Outcome of one verifier run.

    ``passed`` is true iff every check's residual is within its threshold.
    ``witness`` is the lexicographically smallest index pair among the
    failing checks that carry one (1-based, as printed by the CLI).
    Sub-reports in ``parts`` are diagnostic; a verifier that wants a stage
    to gate the verdict copies the stage's checks into its own list.
    """

    checks: tuple[Check, ...] = ()
    parts: dict[str, "VerdictReport"] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def of(
        cls,
        checks: Iterable[Check],
        parts: dict[str, "VerdictReport"] | None = None,
        notes: dict[str, Any] | None = None,
    ) -> "VerdictReport":
        return cls(tuple(checks), dict(parts or {}), dict(notes or {}))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def witness(self) -> tuple[int, int] | None:
        failing = [c.pair for c in self.checks if not c.passed and c.pair is not None]
        return min(failing) if failing else None

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def prefixed(self, prefix: str) -> tuple[Check, ...]:
        return tuple(
            Check(f"{prefix}: {c.label}", c.residual, c.threshold, c.pair) for c in self.checks
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "pass": self.passed,
            "witness": list(self.witness) if self.witness else None,
            "checks": [c.to_dict() for c in self.checks],
            "parts": {k: v.to_dict() for k, v in self.parts.items()},
            "notes": self.notes,
        }


def _json_float(x: float) -> float | str:
    # JSON has no inf/nan literals
    return x if math.isfinite(x) else repr(x)
