"""Verification reports shared by the checking operations and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Outcome of a mechanical check.

    ``details`` holds named values rendered as deterministic strings (or
    nested lists/dicts of them) so reports can be compared byte for byte.
    """

    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "outcome": self.outcome, "details": self.details}


def nonzero_entries(entries, limit: int = 8) -> list[str]:
    """Render up to ``limit`` nonzero residual entries ``{key: value}``."""
    out = []
    for key in sorted(entries)[:limit]:
        out.append(f"{key}: {entries[key]}")
    if len(entries) > limit:
        out.append(f"... {len(entries) - limit} more")
    return out
