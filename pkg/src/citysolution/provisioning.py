"""Single-use employee credentials: the QR payload text and its redemption.

The payload grammar is version-tagged and bit-exact:
``CS1|<employee_id>|<first_name>|<last_name>|<city>`` with non-empty fields
and no ``|`` inside a field. The backend treats the payload as opaque text;
rendering it as a QR raster is a client concern. Redemption matches all four
fields against the issued record, so a partially forged code is rejected
even when the employee ID exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .accounts import AccountService, Role
from .errors import (
    AlreadyExists,
    AlreadyUsed,
    Conflict,
    DuplicateCredential,
    FieldMismatch,
    InvalidPayloadField,
    MalformedPayload,
    NotFound,
    PermissionDenied,
    UnknownCredential,
)
from .storage import Document, MemoryStore
from .util import Clock, from_iso, to_iso, utc_now

COLLECTION = "credentials"
PAYLOAD_VERSION = "CS1"
_FIELD_COUNT = 4


@dataclass(frozen=True)
class CredentialPayload:
    employee_id: str
    first_name: str
    last_name: str
    city: str

    @property
    def fields(self) -> tuple[str, str, str, str]:
        return (self.employee_id, self.first_name, self.last_name, self.city)


@dataclass(frozen=True)
class CredentialRecord:
    employee_id: str
    first_name: str
    last_name: str
    city: str
    issued_by: str
    issued_at: datetime
    used: bool
    used_by: str | None

    def to_dict(self) -> dict:
        return {
            "employee_id": self.employee_id,
            "first_name": self.first_name,
            "last_name": self.last_name,
            "city": self.city,
            "issued_by": self.issued_by,
            "issued_at": to_iso(self.issued_at),
            "used": self.used,
            "used_by": self.used_by,
        }


def encode_payload(payload: CredentialPayload) -> str:
    for value in payload.fields:
        if not value:
            raise InvalidPayloadField("payload fields must be non-empty")
        if "|" in value or any(ord(ch) < 32 or ord(ch) == 127 for ch in value):
            raise InvalidPayloadField(f"illegal character in field {value!r}")
    return "|".join((PAYLOAD_VERSION,) + payload.fields)


def decode_payload(text: str) -> CredentialPayload:
    parts = text.split("|")
    if len(parts) != 1 + _FIELD_COUNT:
        raise MalformedPayload(f"expected {1 + _FIELD_COUNT} fields, got {len(parts)}")
    if parts[0] != PAYLOAD_VERSION:
        raise MalformedPayload(f"unknown version tag {parts[0]!r}")
    if any(not field or any(ord(ch) < 32 or ord(ch) == 127 for ch in field) for field in parts[1:]):
        raise MalformedPayload("payload fields must be non-empty")
    return CredentialPayload(*parts[1:])


def _record_from_doc(doc: Document) -> CredentialRecord:
    body = doc.body
    return CredentialRecord(
        employee_id=body["employee_id"],
        first_name=body["first_name"],
        last_name=body["last_name"],
        city=body["city"],
        issued_by=body["issued_by"],
        issued_at=from_iso(body["issued_at"]),
        used=body["used"],
        used_by=body.get("used_by"),
    )


class CredentialService:
    def __init__(self, store: MemoryStore, accounts: AccountService, clock: Clock = utc_now):
        self._store = store
        self._accounts = accounts
        self._clock = clock

    def generate(
        self, actor_id: str, employee_id: str, first_name: str, last_name: str, city: str
    ) -> tuple[CredentialRecord, str]:
        """Issue a new single-use credential; central-admin only."""
        try:
            actor = self._accounts.get(actor_id)
        except NotFound:
            raise PermissionDenied("unknown actor") from None
        if actor.role is not Role.CENTRAL_ADMIN:
            raise PermissionDenied("only the central admin issues credentials")
        payload = CredentialPayload(employee_id, first_name, last_name, city)
        payload_text = encode_payload(payload)  # validates the fields
        body = {
            "employee_id": employee_id,
            "first_name": first_name,
            "last_name": last_name,
            "city": city,
            "issued_by": actor_id,
            "issued_at": to_iso(self._clock()),
            "used": False,
            "used_by": None,
        }
        try:
            doc = self._store.put(COLLECTION, employee_id, body)
        except AlreadyExists:
            raise DuplicateCredential(f"employee id {employee_id!r} already issued") from None
        return _record_from_doc(doc), payload_text

    def peek(self, payload_text: str) -> CredentialRecord:
        """Validate a payload against the issued records without consuming it."""
        record, _ = self._lookup(payload_text)
        return record

    def redeem(self, payload_text: str, used_by: str) -> CredentialRecord:
        """Atomically consume the credential; exactly one concurrent caller wins."""
        while True:
            record, doc = self._lookup(payload_text)
            body = dict(doc.body, used=True, used_by=used_by)
            try:
                updated = self._store.put(COLLECTION, doc.key, body, doc.revision)
            except Conflict:
                continue  # someone else touched the record; re-check its state
            return _record_from_doc(updated)

    def get(self, employee_id: str) -> CredentialRecord:
        return _record_from_doc(self._store.get(COLLECTION, employee_id))

    def _lookup(self, payload_text: str) -> tuple[CredentialRecord, Document]:
        payload = decode_payload(payload_text)
        try:
            doc = self._store.get(COLLECTION, payload.employee_id)
        except NotFound:
            raise UnknownCredential("credential was not issued by the central admin") from None
        record = _record_from_doc(doc)
        if (record.first_name, record.last_name, record.city) != (
            payload.first_name,
            payload.last_name,
            payload.city,
        ):
            raise FieldMismatch("credential fields do not match the issued record")
        if record.used:
            raise AlreadyUsed(f"credential {payload.employee_id!r} was already redeemed")
        return record, doc
