"""Clock and identifier plumbing shared by the services.

All timestamps are server-assigned UTC truncated to millisecond precision;
clients never supply times. Identifiers are time-ordered so that lexical
order matches creation order, which keeps newest-first sorts stable even
when two records share a millisecond.
"""

from __future__ import annotations

import itertools
import threading
import time
from datetime import datetime, timezone
from typing import Callable

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    """Current UTC time truncated to millisecond precision."""
    now = datetime.now(timezone.utc)
    return now.replace(microsecond=(now.microsecond // 1000) * 1000)


def to_iso(ts: datetime) -> str:
    """Fixed-width ISO-8601 with milliseconds; lexical order is chronological."""
    return ts.strftime("%Y-%m-%dT%H:%M:%S.") + f"{ts.microsecond // 1000:03d}Z"


def from_iso(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%S.%fZ").replace(tzinfo=timezone.utc)


class IdFactory:
    """Produces process-unique, time-ordered identifiers.

    Format: ``<prefix><time_ns hex, 16 chars>-<sequence hex, 6 chars>``.
    The nanosecond component keeps ids unique across restarts, the sequence
    keeps them strictly increasing within a process.
    """

    def __init__(self, clock_ns: Callable[[], int] = time.time_ns):
        self._clock_ns = clock_ns
        self._seq = itertools.count()
        self._lock = threading.Lock()

    def new(self, prefix: str = "") -> str:
        with self._lock:
            return f"{prefix}{self._clock_ns():016x}-{next(self._seq):06x}"
