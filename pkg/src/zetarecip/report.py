"""Left-side versus right-side comparison records."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

_TINY = 1e-300


@dataclass(frozen=True)
class IdentityReport:
    name: str
    params: dict
    lhs: float
    rhs: float
    lhs_err: float
    rhs_err: float
    abs_diff: float
    rel_diff: float
    tol: float
    passed: bool
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": {k: float(v) for k, v in self.params.items()},
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lhs_err": self.lhs_err,
            "rhs_err": self.rhs_err,
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "tol": self.tol,
            "pass": self.passed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        # repr-based float output round-trips (17 significant digits at most)
        return json.dumps(self.to_dict(), allow_nan=True)


def make_report(name, params, lhs, rhs, lhs_err, rhs_err, tol, notes=()):
    """Build a report; pass iff the difference fits the budget or ``rel_diff <= tol``."""
    lhs, rhs = float(lhs), float(rhs)
    lhs_err, rhs_err = abs(float(lhs_err)), abs(float(rhs_err))
    abs_diff = abs(lhs - rhs)
    rel_diff = abs_diff / max(abs(lhs), abs(rhs), _TINY)
    passed = bool(abs_diff <= tol + lhs_err + rhs_err or rel_diff <= tol)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        passed = False
    return IdentityReport(
        name=name,
        params=dict(params),
        lhs=lhs,
        rhs=rhs,
        lhs_err=lhs_err,
        rhs_err=rhs_err,
        abs_diff=abs_diff,
        rel_diff=rel_diff,
        tol=float(tol),
        passed=passed,
        notes=tuple(notes),
    )
