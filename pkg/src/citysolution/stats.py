"""City-wise and nationwide complaint aggregation as chart-ready series.

Counts are recomputed from the store on every call; correctness over caching.
Fake complaints stay out of the status breakdown (their lifecycle is frozen)
but appear in the category breakdown as their own category.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complaints import (
    CATEGORY_LABEL_KEYS,
    COMPLAINTS,
    STATUS_LABEL_KEYS,
    Category,
    Status,
    complaint_from_doc,
)
from .storage import MemoryStore

NATIONWIDE = "ALL"


@dataclass(frozen=True)
class StatusBreakdown:
    city: str
    pending: int
    processing: int
    solved: int

    @property
    def total(self) -> int:
        return self.pending + self.processing + self.solved


@dataclass(frozen=True)
class CategoryBreakdown:
    city: str
    counts: dict[Category, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _in_scope(complaint, scope_city: str | None) -> bool:
    return scope_city is None or complaint.city == scope_city


def status_breakdown(store: MemoryStore, scope_city: str | None = None) -> StatusBreakdown:
    tally = {status: 0 for status in Status}
    for doc in store.query(COMPLAINTS):
        complaint = complaint_from_doc(doc)
        if complaint.category is Category.FAKE_COMPLAINT:
            continue
        if _in_scope(complaint, scope_city):
            tally[complaint.status] += 1
    return StatusBreakdown(
        city=scope_city or NATIONWIDE,
        pending=tally[Status.PENDING],
        processing=tally[Status.PROCESSING],
        solved=tally[Status.SOLVED],
    )


def category_breakdown(store: MemoryStore, scope_city: str | None = None) -> CategoryBreakdown:
    counts = {category: 0 for category in Category}
    for doc in store.query(COMPLAINTS):
        complaint = complaint_from_doc(doc)
        if _in_scope(complaint, scope_city):
            counts[complaint.category] += 1
    return CategoryBreakdown(city=scope_city or NATIONWIDE, counts=counts)


def chart_series(breakdown: StatusBreakdown | CategoryBreakdown) -> dict:
    """Label order is fixed by the enums, independent of insertion order."""
    if isinstance(breakdown, StatusBreakdown):
        values = {
            Status.PENDING: breakdown.pending,
            Status.PROCESSING: breakdown.processing,
            Status.SOLVED: breakdown.solved,
        }
        points = [
            {"label_key": STATUS_LABEL_KEYS[status], "value": values[status]} for status in Status
        ]
        kind = "status"
    else:
        points = [
            {"label_key": CATEGORY_LABEL_KEYS[category], "value": breakdown.counts[category]}
            for category in Category
        ]
        kind = "category"
    return {"scope": breakdown.city, "kind": kind, "points": points}
