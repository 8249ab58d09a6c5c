"""Deterministic JSON reports for the command-line tool.

Quaternions are written as ``[w, x, y, z]`` arrays, with a ``*_literal``
companion in the ``1+2i-3j+4k`` syntax for human readers.  Keys are sorted and
floats are printed with ``repr`` precision, so identical inputs give
byte-identical documents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .fileio import jet_to_dict
from .quat import Quaternion, format_short
from .series import QJet, RJet
from .starlog import LogResult
from .zeros import Obstruction, ZeroReport


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    threshold: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "max_residual": self.max_residual,
            "threshold": self.threshold,
        }


def quat_entry(q: Quaternion, key: str) -> dict:
    return {key: q.to_list(), f"{key}_literal": format_short(q)}


def _clean(value):
    """Make ``value`` JSON friendly: non-finite floats become strings."""
    if isinstance(value, float):
        # -0.0 would make equal results print differently
        return value + 0.0 if math.isfinite(value) else repr(value)
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, Quaternion):
        return value.to_list()
    if isinstance(value, (QJet, RJet)):
        return jet_to_dict(value)
    if hasattr(value, "item"):  # numpy scalars
        return _clean(value.item())
    return value


def log_payload(result: LogResult | Obstruction) -> dict:
    if isinstance(result, Obstruction):
        body = {"rule": result.rule, "message": result.describe()}
        body.update(quat_entry(result.zero_point, "zero"))
        body.update(quat_entry(result.g0_value, "g0_value"))
        return {"obstruction": body}
    return {
        "route": result.route,
        "residual": result.residual,
        "point_residual": result.point_residual,
        "branch_shift": result.shift,
        "attempts": result.attempts,
        "psi": result.psi,
        "result": result.f,
    }


def zeros_payload(report: ZeroReport) -> dict:
    out = report.to_dict()
    out["isolated_literal"] = [format_short(q) for q in report.isolated_zeros]
    return out


def report_emit(result, command: str | None = None, inputs: dict | None = None) -> str:
    """Serialize a computation as a stable JSON document."""
    if isinstance(result, (LogResult, Obstruction)):
        body = log_payload(result)
    elif isinstance(result, ZeroReport):
        body = zeros_payload(result)
    elif isinstance(result, list) and all(isinstance(r, CheckResult) for r in result):
        body = {"checks": [r.to_dict() for r in result], "pass": all(r.passed for r in result)}
    elif isinstance(result, dict):
        body = dict(result)
    else:
        body = {"result": result}
    doc = {"command": command, "inputs": inputs or {}, **body}
    return json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n"
