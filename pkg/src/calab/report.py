"""Structured verdict records."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

VERDICTS = ("verified", "refuted", "not-applicable", "unknown")


def jsonable(v: Any):
    """Render computed values deterministically for reports."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if v.is_integer():
            return int(v)
        return v
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    return str(v)


@dataclass
class CheckReport:
    claim_id: str
    anchor: str
    inputs: str = ""
    values: dict = field(default_factory=dict)
    verdict: str = "unknown"
    scope: list = field(default_factory=list)
    expected: str = "verified"

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def as_expected(self) -> bool:
        return self.verdict == self.expected

    def to_dict(self) -> dict:
        return {
            "id": self.claim_id,
            "anchor": self.anchor,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "expected": self.expected,
            "as_expected": self.as_expected,
            "values": {k: jsonable(v) for k, v in self.values.items()},
            "scope": list(self.scope),
        }


def combine(subverdicts) -> str:
    """Conjunction of three-valued sub-checks (True / False / None)."""
    subverdicts = list(subverdicts)
    if any(v is False for v in subverdicts):
        return "refuted"
    if any(v is None for v in subverdicts):
        return "unknown"
    return "verified"


def report_schema() -> dict:
    """The published JSON schema for session and corpus reports."""
    import json
    from importlib import resources

    return json.loads(resources.files("calab").joinpath("report.schema.json").read_text(encoding="utf-8"))
