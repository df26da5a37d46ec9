from __future__ import annotations

from enum import Enum


class Verdict(str, Enum):
    """Outcome of checking one claim on one instance."""

    HOLDS = "HOLDS"
    REFUTED = "REFUTED"
    SKIPPED = "SKIPPED"
    STRUCTURE_VIOLATION = "STRUCTURE_VIOLATION"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"

    def __str__(self) -> str:
        return self.value


class BudgetExceeded(RuntimeError):
    """An enumeration or search hit its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap
