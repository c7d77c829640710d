"""Structured verification outcomes."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class Report:
    check: str
    mode: str  # trunc | exact | numeric | formal
    params: Dict[str, Any] = field(default_factory=dict)
    status: str = PASS
    witness: Any = None
    timing: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "mode": self.mode,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
        }
        if timing and self.timing is not None:
            out["timing"] = round(self.timing, 3)
        return out

    def line(self) -> str:
        p = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"[{self.status.upper()}] {self.check} ({self.mode}; {p})"


def dumps(reports: List[Report], suite: str, timing: bool = False) -> str:
    payload = {
        "suite": suite,
        "status": PASS if all(r.passed for r in reports) else FAIL,
        "checks": [r.to_dict(timing) for r in reports],
    }
    return json.dumps(payload, sort_keys=True, indent=2)
