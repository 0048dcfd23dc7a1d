"""Enumeration budget guard.

Explicit set computations refuse to start when their size estimate exceeds
the cap, instead of grinding forever.  ATOMLEN_BUDGET overrides the default.
"""
from __future__ import annotations

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10 ** 8


def cap() -> int:
    raw = os.environ.get("ATOMLEN_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_BUDGET


def check(estimate: int, *, what: str) -> None:
    limit = cap()
    if estimate > limit:
        raise BudgetExceeded(
            f"{what} needs ~{estimate} steps, over the budget of {limit} "
            f"(raise ATOMLEN_BUDGET to override)")
