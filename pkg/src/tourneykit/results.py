"""Outcome record for searches that can be incomplete."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    FOUND = "found"
    NONE = "none"        # certified: exhaustive search found nothing
    UNKNOWN = "unknown"  # budget exhausted outside the exhaustive regime


@dataclass(frozen=True)
class SearchResult:
    """Like ``scipy.optimize.OptimizeResult``: inspect ``status`` before ``value``."""

    status: Status
    value: Any = None
    nodes: int = 0
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def __bool__(self):
        return self.found
