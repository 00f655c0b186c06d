"""Complaint lifecycle: submission, triage, category correction, fake marking.

Status moves forward only (Pending -> Processing -> Solved, with the direct
Pending -> Solved shortcut); marking a complaint fake freezes it. Every
mutation of a complaint record emits one audit event, and citizen-facing
changes emit one notification. All writes go through storage compare-and-set,
so concurrent triage of one complaint resolves to a single winner and a
Conflict for everyone else.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum

from . import geo
from .accounts import AccountService, Role, UserAccount
from .classifier import MODEL_CLASSES, Model, classify, preprocess
from .errors import (
    FakeLocked,
    InvalidCategory,
    InvalidImage,
    InvalidTransition,
    LabelMismatch,
    ModelUnavailable,
    NotFound,
    PermissionDenied,
)
from .notifications import NotificationKind, NotificationLog
from .storage import Document, MemoryStore
from .util import Clock, IdFactory, from_iso, to_iso, utc_now

COMPLAINTS = "complaints"
EVENTS = "events"

MAX_IMAGE_BYTES = 5 * 1024 * 1024


class Status(str, Enum):
    PENDING = "Pending"
    PROCESSING = "Processing"
    SOLVED = "Solved"


class Category(str, Enum):
    DAMAGED_ROAD = "DamagedRoad"
    FLOOD = "Flood"
    TRASH = "Trash"
    HOMELESS_PEOPLE = "HomelessPeople"
    FAKE_COMPLAINT = "FakeComplaint"


class CategorySource(str, Enum):
    MODEL = "Model"
    AUTHORITY = "Authority"


class EventKind(str, Enum):
    STATUS_CHANGED = "StatusChanged"
    CATEGORY_CHANGED = "CategoryChanged"
    MARKED_FAKE = "MarkedFake"
    FEEDBACK_SENT = "FeedbackSent"


MODEL_CATEGORIES = (
    Category.DAMAGED_ROAD,
    Category.FLOOD,
    Category.TRASH,
    Category.HOMELESS_PEOPLE,
)

# Model label order and the first four category values are the same contract.
assert tuple(c.value for c in MODEL_CATEGORIES) == MODEL_CLASSES

ALLOWED_TRANSITIONS = frozenset(
    {
        (Status.PENDING, Status.PROCESSING),
        (Status.PENDING, Status.SOLVED),
        (Status.PROCESSING, Status.SOLVED),
    }
)

STATUS_LABEL_KEYS = {
    Status.PENDING: "status.pending",
    Status.PROCESSING: "status.processing",
    Status.SOLVED: "status.solved",
}

CATEGORY_LABEL_KEYS = {
    Category.DAMAGED_ROAD: "category.damaged_road",
    Category.FLOOD: "category.flood",
    Category.TRASH: "category.trash",
    Category.HOMELESS_PEOPLE: "category.homeless_people",
    Category.FAKE_COMPLAINT: "category.fake_complaint",
}


@dataclass(frozen=True)
class Complaint:
    id: str
    submitter_id: str
    image_ref: str
    category: Category
    category_source: CategorySource
    confidence: float | None
    status: Status
    city: str
    location: geo.GeoPoint
    note: str | None
    created_at: datetime
    updated_at: datetime
    revision: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "submitter_id": self.submitter_id,
            "image_ref": self.image_ref,
            "category": self.category.value,
            "category_source": self.category_source.value,
            "confidence": self.confidence,
            "status": self.status.value,
            "city": self.city,
            "location": self.location.to_dict(),
            "note": self.note,
            "created_at": to_iso(self.created_at),
            "updated_at": to_iso(self.updated_at),
            "revision": self.revision,
        }


@dataclass(frozen=True)
class StatusEvent:
    id: str
    complaint_id: str
    actor_id: str
    kind: EventKind
    from_value: str
    to_value: str
    timestamp: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "complaint_id": self.complaint_id,
            "actor_id": self.actor_id,
            "kind": self.kind.value,
            "from_value": self.from_value,
            "to_value": self.to_value,
            "timestamp": to_iso(self.timestamp),
        }


def complaint_from_doc(doc: Document) -> Complaint:
    body = doc.body
    return Complaint(
        id=body["id"],
        submitter_id=body["submitter_id"],
        image_ref=body["image_ref"],
        category=Category(body["category"]),
        category_source=CategorySource(body["category_source"]),
        confidence=body.get("confidence"),
        status=Status(body["status"]),
        city=body["city"],
        location=geo.GeoPoint.from_dict(body["location"]),
        note=body.get("note"),
        created_at=from_iso(body["created_at"]),
        updated_at=from_iso(body["updated_at"]),
        revision=doc.revision,
    )


def _event_from_doc(doc: Document) -> StatusEvent:
    body = doc.body
    return StatusEvent(
        id=body["id"],
        complaint_id=body["complaint_id"],
        actor_id=body["actor_id"],
        kind=EventKind(body["kind"]),
        from_value=body["from_value"],
        to_value=body["to_value"],
        timestamp=from_iso(body["timestamp"]),
    )


def _sniff_media_type(data: bytes) -> str:
    if data.startswith(b"\x89PNG\r\n\x1a\n"):
        return "image/png"
    if data.startswith(b"\xff\xd8\xff"):
        return "image/jpeg"
    return "application/octet-stream"


class ComplaintService:
    def __init__(
        self,
        store: MemoryStore,
        accounts: AccountService,
        notifications: NotificationLog,
        geocoder: geo.Geocoder,
        model: Model | None = None,
        country_code: str = geo.DEFAULT_COUNTRY,
        clock: Clock = utc_now,
        ids: IdFactory | None = None,
    ):
        self._store = store
        self._accounts = accounts
        self._notifications = notifications
        self._geocoder = geocoder
        self._model = model
        self._country_code = country_code
        self._clock = clock
        self._ids = ids or IdFactory()

    # -- submission -------------------------------------------------------

    def submit_complaint(
        self,
        submitter_id: str,
        image_bytes: bytes,
        location: geo.GeoPoint,
        note: str | None = None,
    ) -> Complaint:
        submitter = self._require_citizen(submitter_id)
        if len(image_bytes) > MAX_IMAGE_BYTES:
            raise InvalidImage(f"image exceeds {MAX_IMAGE_BYTES} bytes")
        tensor = preprocess(image_bytes)  # raises InvalidImage on bad bytes
        place = geo.gate_country(location, self._geocoder, self._country_code)
        if self._model is None:
            raise ModelUnavailable("no classification model configured")
        prediction = classify(self._model, tensor)
        try:
            category = Category(prediction.label)
        except ValueError:
            raise LabelMismatch(f"model label {prediction.label!r} is not a platform category") from None
        if category not in MODEL_CATEGORIES:  # a model must never assign FakeComplaint
            raise LabelMismatch(f"model label {prediction.label!r} is not a model class")

        blob = self._store.put_blob(image_bytes, _sniff_media_type(image_bytes))
        now = to_iso(self._clock())
        complaint_id = self._ids.new("C-")
        body = {
            "id": complaint_id,
            "submitter_id": submitter.id,
            "image_ref": blob.id,
            "category": category.value,
            "category_source": CategorySource.MODEL.value,
            "confidence": max(prediction.probabilities),
            "status": Status.PENDING.value,
            "city": place.city,
            "location": location.to_dict(),
            "note": note,
            "created_at": now,
            "updated_at": now,
        }
        doc = self._store.put(COMPLAINTS, complaint_id, body)
        self._record_event(complaint_id, submitter.id, EventKind.STATUS_CHANGED, "", Status.PENDING.value)
        return complaint_from_doc(doc)

    # -- triage ----------------------------------------------------------------

    def transition_status(
        self,
        actor_id: str,
        complaint_id: str,
        new_status: Status | str,
        feedback_text: str | None = None,
    ) -> StatusEvent:
        doc = self._load(complaint_id)
        complaint = complaint_from_doc(doc)
        actor = self._require_authority(actor_id, complaint.city)
        self._require_not_fake(complaint)
        try:
            new_status = Status(new_status)
        except ValueError:
            raise InvalidTransition(f"unknown status {new_status!r}") from None
        if (complaint.status, new_status) not in ALLOWED_TRANSITIONS:
            raise InvalidTransition(f"{complaint.status.value} -> {new_status.value} is not allowed")

        body = dict(doc.body, status=new_status.value, updated_at=to_iso(self._clock()))
        self._store.put(COMPLAINTS, complaint_id, body, doc.revision)
        event = self._record_event(
            complaint_id, actor.id, EventKind.STATUS_CHANGED, complaint.status.value, new_status.value
        )
        self._notifications.emit(
            complaint.submitter_id,
            NotificationKind.STATUS_UPDATE,
            (complaint_id, STATUS_LABEL_KEYS[new_status]),
            complaint_id,
        )
        if feedback_text:
            self._record_event(complaint_id, actor.id, EventKind.FEEDBACK_SENT, "", feedback_text)
            self._notifications.emit(
                complaint.submitter_id,
                NotificationKind.FEEDBACK,
                (complaint_id, feedback_text),
                complaint_id,
            )
        return event

    def reassign_category(
        self, actor_id: str, complaint_id: str, new_category: Category | str
    ) -> StatusEvent:
        doc = self._load(complaint_id)
        complaint = complaint_from_doc(doc)
        actor = self._require_authority(actor_id, complaint.city)
        self._require_not_fake(complaint)
        try:
            new_category = Category(new_category)
        except ValueError:
            raise InvalidCategory(f"unknown category {new_category!r}") from None
        if new_category not in MODEL_CATEGORIES:
            raise InvalidCategory("use mark_fake for fake complaints")

        body = dict(
            doc.body,
            category=new_category.value,
            category_source=CategorySource.AUTHORITY.value,
            confidence=None,
            updated_at=to_iso(self._clock()),
        )
        self._store.put(COMPLAINTS, complaint_id, body, doc.revision)
        return self._record_event(
            complaint_id, actor.id, EventKind.CATEGORY_CHANGED, complaint.category.value, new_category.value
        )

    def mark_fake(self, actor_id: str, complaint_id: str) -> StatusEvent:
        doc = self._load(complaint_id)
        complaint = complaint_from_doc(doc)
        actor = self._require_authority(actor_id, complaint.city)
        self._require_not_fake(complaint)

        body = dict(
            doc.body,
            category=Category.FAKE_COMPLAINT.value,
            category_source=CategorySource.AUTHORITY.value,
            confidence=None,
            updated_at=to_iso(self._clock()),
        )
        self._store.put(COMPLAINTS, complaint_id, body, doc.revision)
        event = self._record_event(
            complaint_id,
            actor.id,
            EventKind.MARKED_FAKE,
            complaint.category.value,
            Category.FAKE_COMPLAINT.value,
        )
        self._notifications.emit(
            complaint.submitter_id, NotificationKind.FAKE_MARKED, (complaint_id,), complaint_id
        )
        return event

    def send_feedback(self, actor_id: str, complaint_id: str, text: str) -> StatusEvent:
        """Feedback without a status change; the complaint record is untouched."""
        complaint = complaint_from_doc(self._load(complaint_id))
        actor = self._require_authority(actor_id, complaint.city)
        self._require_not_fake(complaint)
        event = self._record_event(complaint_id, actor.id, EventKind.FEEDBACK_SENT, "", text)
        self._notifications.emit(
            complaint.submitter_id, NotificationKind.FEEDBACK, (complaint_id, text), complaint_id
        )
        return event

    # -- reads -------------------------------------------------------------------

    def get_complaint(self, actor_id: str, complaint_id: str) -> Complaint:
        complaint = complaint_from_doc(self._load(complaint_id))
        actor = self._require_account(actor_id)
        if actor.role is Role.CITIZEN and complaint.submitter_id != actor.id:
            raise PermissionDenied("citizens see only their own complaints")
        if actor.role is Role.CITY_EMPLOYEE and complaint.city != actor.city:
            raise PermissionDenied("employees see only their own city")
        return complaint

    def list_complaints(
        self,
        actor_id: str,
        city: str | None = None,
        status: Status | str | None = None,
        category: Category | str | None = None,
        submitter: str | None = None,
    ) -> list[Complaint]:
        """Scoped listing, newest first. Role scope overrides the filters."""
        actor = self._require_account(actor_id)
        if actor.role is Role.CITIZEN:
            submitter = actor.id
        elif actor.role is Role.CITY_EMPLOYEE:
            city = actor.city
        status = Status(status) if status is not None else None
        category = Category(category) if category is not None else None

        results = []
        for doc in self._store.query(COMPLAINTS):
            complaint = complaint_from_doc(doc)
            if city is not None and complaint.city != city:
                continue
            if status is not None and complaint.status is not status:
                continue
            if category is not None and complaint.category is not category:
                continue
            if submitter is not None and complaint.submitter_id != submitter:
                continue
            results.append(complaint)
        results.sort(key=lambda c: (c.created_at, c.id), reverse=True)
        return results

    def events_for(self, complaint_id: str) -> list[StatusEvent]:
        docs = self._store.query(EVENTS, lambda d: d.body["complaint_id"] == complaint_id)
        events = [_event_from_doc(d) for d in docs]
        events.sort(key=lambda e: (e.timestamp, e.id))
        return events

    def map_link(self, actor_id: str, complaint_id: str) -> str:
        complaint = self.get_complaint(actor_id, complaint_id)
        return geo.map_link(complaint.location)

    def contact_link(self, actor_id: str, complaint_id: str, language: str = "en") -> str:
        complaint = self.get_complaint(actor_id, complaint_id)
        try:
            submitter = self._accounts.get(complaint.submitter_id)
        except NotFound:
            submitter = None
        return geo.contact_link(complaint, submitter, language)

    # -- internals -----------------------------------------------------------------

    def _load(self, complaint_id: str) -> Document:
        return self._store.get(COMPLAINTS, complaint_id)

    def _require_account(self, account_id: str) -> UserAccount:
        try:
            account = self._accounts.get(account_id)
        except NotFound:
            raise PermissionDenied(f"unknown account {account_id!r}") from None
        if not account.active:
            raise PermissionDenied("account is not active")
        return account

    def _require_citizen(self, account_id: str) -> UserAccount:
        account = self._require_account(account_id)
        if account.role is not Role.CITIZEN:
            raise PermissionDenied("only citizens submit complaints")
        return account

    def _require_authority(self, account_id: str, complaint_city: str) -> UserAccount:
        account = self._require_account(account_id)
        if account.role is Role.CENTRAL_ADMIN:
            return account
        if account.role is Role.CITY_EMPLOYEE and account.city == complaint_city:
            return account
        raise PermissionDenied("requires a same-city employee or the central admin")

    def _require_not_fake(self, complaint: Complaint) -> None:
        if complaint.category is Category.FAKE_COMPLAINT:
            raise FakeLocked(f"complaint {complaint.id} is frozen as a fake complaint")

    def _record_event(
        self, complaint_id: str, actor_id: str, kind: EventKind, from_value: str, to_value: str
    ) -> StatusEvent:
        event_id = self._ids.new("E-")
        body = {
            "id": event_id,
            "complaint_id": complaint_id,
            "actor_id": actor_id,
            "kind": kind.value,
            "from_value": from_value,
            "to_value": to_value,
            "timestamp": to_iso(self._clock()),
        }
        return _event_from_doc(self._store.put(EVENTS, event_id, body))
