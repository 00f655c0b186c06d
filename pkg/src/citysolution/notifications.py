"""User-facing notifications driven by lifecycle events.

Notifications are never deleted, only marked read. The stored record carries
a catalog message key plus substitution params so each client renders it in
its own language.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum

from .errors import NotFound, PermissionDenied
from .storage import Document, MemoryStore
from .util import Clock, IdFactory, from_iso, to_iso, utc_now

COLLECTION = "notifications"


class NotificationKind(str, Enum):
    STATUS_UPDATE = "StatusUpdate"
    FEEDBACK = "Feedback"
    FAKE_MARKED = "FakeMarked"
    ACCOUNT_REMOVED = "AccountRemoved"


MESSAGE_KEYS: dict[NotificationKind, str] = {
    NotificationKind.STATUS_UPDATE: "notification.status_update",
    NotificationKind.FEEDBACK: "notification.feedback",
    NotificationKind.FAKE_MARKED: "notification.fake_marked",
    NotificationKind.ACCOUNT_REMOVED: "notification.account_removed",
}


@dataclass(frozen=True)
class Notification:
    id: str
    recipient_id: str
    kind: NotificationKind
    complaint_id: str | None
    message_key: str
    params: tuple[str, ...]
    read: bool
    created_at: datetime


def _from_doc(doc: Document) -> Notification:
    body = doc.body
    return Notification(
        id=body["id"],
        recipient_id=body["recipient_id"],
        kind=NotificationKind(body["kind"]),
        complaint_id=body.get("complaint_id"),
        message_key=body["message_key"],
        params=tuple(body["params"]),
        read=body["read"],
        created_at=from_iso(body["created_at"]),
    )


class NotificationLog:
    def __init__(self, store: MemoryStore, clock: Clock = utc_now, ids: IdFactory | None = None):
        self._store = store
        self._clock = clock
        self._ids = ids or IdFactory()

    def emit(
        self,
        recipient_id: str,
        kind: NotificationKind,
        params: tuple[str, ...] = (),
        complaint_id: str | None = None,
    ) -> Notification:
        notification_id = self._ids.new("N-")
        body = {
            "id": notification_id,
            "recipient_id": recipient_id,
            "kind": kind.value,
            "complaint_id": complaint_id,
            "message_key": MESSAGE_KEYS[kind],
            "params": list(params),
            "read": False,
            "created_at": to_iso(self._clock()),
        }
        return _from_doc(self._store.put(COLLECTION, notification_id, body))

    def list_for(self, recipient_id: str) -> list[Notification]:
        docs = self._store.query(COLLECTION, lambda d: d.body["recipient_id"] == recipient_id)
        items = [_from_doc(d) for d in docs]
        items.sort(key=lambda n: (n.created_at, n.id), reverse=True)
        return items

    def mark_read(self, recipient_id: str, notification_id: str) -> Notification:
        """Flips read exactly once; re-reading an already-read one is a no-op."""
        doc = self._store.get(COLLECTION, notification_id)
        if doc.body["recipient_id"] != recipient_id:
            raise PermissionDenied("notification belongs to another account")
        if doc.body["read"]:
            return _from_doc(doc)
        body = dict(doc.body, read=True)
        return _from_doc(self._store.put(COLLECTION, notification_id, body, doc.revision))

    def get(self, recipient_id: str, notification_id: str) -> Notification:
        try:
            doc = self._store.get(COLLECTION, notification_id)
        except NotFound:
            raise
        if doc.body["recipient_id"] != recipient_id:
            raise PermissionDenied("notification belongs to another account")
        return _from_doc(doc)
