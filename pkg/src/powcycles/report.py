"""Pass/violation records shared by the structural checkers and verifiers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
VIOLATION = "violation"

CLAIMS = (
    "thm1",
    "corollary",
    "lemma2",
    "thm2",
    "thm2_stated",
    "thm2_recurrence",
    "fact_i",
    "fact_ii",
    "lemma1",
)


@dataclass(frozen=True)
class Row:
    index: Any
    observed: int
    bound: int
    satisfied: bool
    family: str | None = None

    def to_json(self) -> dict:
        out = {
            "index": self.index,
            "observed": str(self.observed),
            "bound": str(self.bound),
            "satisfied": self.satisfied,
        }
        if self.family is not None:
            out["family"] = self.family
        return out


@dataclass
class VerificationReport:
    claim: str
    params: dict
    rows: list[Row] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim id {self.claim!r}")

    @property
    def verdict(self) -> str:
        return PASS if all(row.satisfied for row in self.rows) else VIOLATION

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def add(self, index, observed: int, bound: int, satisfied: bool, family=None):
        self.rows.append(Row(index, observed, bound, bool(satisfied), family))

    def first_failure(self) -> Row | None:
        return next((row for row in self.rows if not row.satisfied), None)

    def subset(self, family: str) -> VerificationReport:
        """Rows of one family, re-labelled as a report for that claim."""
        rows = [row for row in self.rows if row.family == family]
        return VerificationReport(family, dict(self.params), rows, list(self.notes))

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "rows": [row.to_json() for row in self.rows],
            "verdict": self.verdict,
            "notes": "\n".join(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
