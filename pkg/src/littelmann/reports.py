"""Verification reports shared by the folding and level-zero checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    check: str
    params: dict
    verdict: str = "pass"
    counterexample: dict | None = None
    sizes: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def fail(self, **counterexample) -> "Report":
        """Mark failed, keeping the first counterexample seen."""
        self.verdict = "fail"
        if self.counterexample is None:
            self.counterexample = counterexample
        return self

    def as_dict(self) -> dict:
        out = {"check": self.check, "params": self.params, "verdict": self.verdict, "sizes": self.sizes}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = self.notes
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1, sort_keys=True, default=str)
