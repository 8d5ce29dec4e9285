"""Case records and suite reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CaseResult:
    case_id: str
    inputs: Dict[str, Any]
    status: str  # "pass", "fail" or "error"
    witness: Optional[str] = None
    info: Dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, include_time: bool = False) -> Dict[str, Any]:
        d: Dict[str, Any] = {"case_id": self.case_id, "inputs": self.inputs, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.info:
            d["info"] = self.info
        if include_time and self.wall_time is not None:
            d["wall_time"] = round(self.wall_time, 6)
        return d


def check(case_id: str, inputs: Dict[str, Any], ok: bool, witness: Any = None, **info) -> CaseResult:
    return CaseResult(case_id, inputs, "pass" if ok else "fail",
                      None if ok else (str(witness) if witness is not None else None), dict(info))


@dataclass
class Report:
    suite: str
    algebra: str
    mode: str
    cases: List[CaseResult] = field(default_factory=list)

    def extend(self, cases) -> None:
        self.cases.extend(cases)

    def summary(self) -> Dict[str, int]:
        counts = {"total": len(self.cases), "pass": 0, "fail": 0, "error": 0}
        for c in self.cases:
            counts[c.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_dict(self, include_time: bool = False) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "algebra": self.algebra,
            "mode": self.mode,
            "cases": [c.to_dict(include_time) for c in self.cases],
            "summary": self.summary(),
        }

    def to_json(self, include_time: bool = False) -> str:
        return json.dumps(self.to_dict(include_time), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  algebra {self.algebra}  mode {self.mode}"]
        for c in self.cases:
            line = f"  [{c.status.upper():5}] {c.case_id}"
            if c.witness:
                line += f"  witness: {c.witness}"
            lines.append(line)
        s = self.summary()
        lines.append(f"  {s['pass']}/{s['total']} passed, {s['fail']} failed, {s['error']} errors")
        return "\n".join(lines)
