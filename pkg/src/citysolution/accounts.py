"""Accounts: email-verified citizen registration, credential-based employee
registration, bearer-token authentication, and admin-driven employee removal.

Passwords are stored as salted PBKDF2-SHA256 digests and never returned or
logged. Email uniqueness is enforced with a compare-and-set reservation
record, so concurrent registrations of one address cannot both succeed.
"""

from __future__ import annotations

import hashlib
import hmac
import re
import secrets
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from enum import Enum
from typing import Callable, Protocol

from .errors import (
    AccountInactive,
    AccountRemoved,
    AlreadyExists,
    Conflict,
    EmailInUse,
    InvalidCredentials,
    InvalidTarget,
    NotFound,
    PermissionDenied,
    TokenExpired,
    WeakPassword,
)
from .notifications import NotificationKind, NotificationLog
from .storage import Document, MemoryStore
from .util import Clock, IdFactory, from_iso, to_iso, utc_now

ACCOUNTS = "accounts"
EMAILS = "emails"
VERIFICATION_TOKENS = "verification_tokens"
SESSIONS = "sessions"

MIN_PASSWORD_LENGTH = 8
HASH_ITERATIONS = 200_000

VERIFY_MAIL_KEYS = ("email.verify.subject", "email.verify.body")
REMOVAL_MAIL_KEYS = ("email.employee_removed.subject", "email.employee_removed.body")

_EMAIL_RE = re.compile(r"^[^@\s]+@[^@\s]+\.[^@\s]+$")


class Role(str, Enum):
    CITIZEN = "Citizen"
    CITY_EMPLOYEE = "CityEmployee"
    CENTRAL_ADMIN = "CentralAdmin"


@dataclass(frozen=True)
class UserAccount:
    id: str
    role: Role
    email: str
    display_name: str
    city: str | None
    active: bool
    language_pref: str
    created_at: datetime
    password_digest: str = field(repr=False, default="")

    def to_public_dict(self) -> dict:
        """Everything a client may see; the digest stays server-side."""
        return {
            "id": self.id,
            "role": self.role.value,
            "email": self.email,
            "display_name": self.display_name,
            "city": self.city,
            "active": self.active,
            "language": self.language_pref,
            "created_at": to_iso(self.created_at),
        }


@dataclass(frozen=True)
class AuthToken:
    token: str
    account_id: str
    role: Role
    city: str | None
    expires_at: datetime


@dataclass(frozen=True)
class MailMessage:
    to: str
    subject_key: str
    body_key: str
    params: tuple[str, ...]
    language: str


class MailSender(Protocol):
    def send(
        self, to: str, subject_key: str, body_key: str, params: tuple[str, ...], language: str
    ) -> None: ...


class RecordingMailer:
    """Test double: keeps every message instead of delivering it."""

    def __init__(self):
        self.outbox: list[MailMessage] = []

    def send(self, to, subject_key, body_key, params, language):
        self.outbox.append(MailMessage(to, subject_key, body_key, tuple(params), language))


def hash_password(password: str, iterations: int = HASH_ITERATIONS, salt: bytes | None = None) -> str:
    salt = salt if salt is not None else secrets.token_bytes(16)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, iterations)
    return f"pbkdf2_sha256${iterations}${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, iterations, salt_hex, digest_hex = stored.split("$")
        if scheme != "pbkdf2_sha256":
            return False
        candidate = hashlib.pbkdf2_hmac(
            "sha256", password.encode("utf-8"), bytes.fromhex(salt_hex), int(iterations)
        )
        return hmac.compare_digest(candidate.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


def _account_from_doc(doc: Document) -> UserAccount:
    body = doc.body
    return UserAccount(
        id=body["id"],
        role=Role(body["role"]),
        email=body["email"],
        display_name=body["display_name"],
        city=body.get("city"),
        active=body["active"],
        language_pref=body["language_pref"],
        created_at=from_iso(body["created_at"]),
        password_digest=body["password_digest"],
    )


class AccountService:
    def __init__(
        self,
        store: MemoryStore,
        mailer: MailSender,
        notifications: NotificationLog,
        clock: Clock = utc_now,
        ids: IdFactory | None = None,
        token_ttl: timedelta = timedelta(hours=24),
        verification_ttl: timedelta = timedelta(hours=24),
        hash_iterations: int = HASH_ITERATIONS,
        token_factory: Callable[[], str] | None = None,
    ):
        self._store = store
        self._mailer = mailer
        self._notifications = notifications
        self._clock = clock
        self._ids = ids or IdFactory()
        self._token_ttl = token_ttl
        self._verification_ttl = verification_ttl
        self._hash_iterations = hash_iterations
        self._token_factory = token_factory or (lambda: secrets.token_urlsafe(32))

    # -- lookup ------------------------------------------------------------

    def get(self, account_id: str) -> UserAccount:
        return _account_from_doc(self._store.get(ACCOUNTS, account_id))

    def find_by_email(self, email: str) -> UserAccount | None:
        try:
            reservation = self._store.get(EMAILS, email.strip().lower())
        except NotFound:
            return None
        try:
            return self.get(reservation.body["account_id"])
        except NotFound:
            return None

    # -- registration --------------------------------------------------------

    def register_citizen(
        self, email: str, password: str, display_name: str, language_pref: str = "en"
    ) -> UserAccount:
        """Creates an inactive account and dispatches a verification token."""
        email = self._validate_email(email)
        self._validate_password(password)
        account_id = self._ids.new("A-")
        self._reserve_email(email, account_id)
        account = self._create_account(
            account_id, Role.CITIZEN, email, display_name, None, password, language_pref, active=False
        )
        token = self._token_factory()
        self._store.put(
            VERIFICATION_TOKENS,
            token,
            {
                "email": email,
                "account_id": account_id,
                "expires_at": to_iso(self._clock() + self._verification_ttl),
                "consumed": False,
            },
        )
        self._mailer.send(email, VERIFY_MAIL_KEYS[0], VERIFY_MAIL_KEYS[1], (token,), language_pref)
        return account

    def verify_email(self, token: str) -> UserAccount:
        doc = self._store.get(VERIFICATION_TOKENS, token)
        if doc.body["consumed"] or from_iso(doc.body["expires_at"]) <= self._clock():
            raise TokenExpired("verification token is no longer valid")
        self._store.put(VERIFICATION_TOKENS, token, dict(doc.body, consumed=True), doc.revision)
        account_doc = self._store.get(ACCOUNTS, doc.body["account_id"])
        updated = self._store.put(
            ACCOUNTS, account_doc.key, dict(account_doc.body, active=True), account_doc.revision
        )
        return _account_from_doc(updated)

    def register_employee(
        self,
        payload_text: str,
        email: str,
        password: str,
        credentials,
        language_pref: str = "en",
    ) -> UserAccount:
        """Redeems a provisioning credential into an active employee account.

        The credential is consumed last, after the email reservation and the
        account write, so a failed registration never burns the credential;
        if a concurrent redemption wins, the writes here are compensated.
        """
        record = credentials.peek(payload_text)
        email = self._validate_email(email)
        self._validate_password(password)
        account_id = self._ids.new("A-")
        self._reserve_email(email, account_id)
        try:
            account = self._create_account(
                account_id,
                Role.CITY_EMPLOYEE,
                email,
                f"{record.first_name} {record.last_name}",
                record.city,
                password,
                language_pref,
                active=True,
            )
            credentials.redeem(payload_text, used_by=account_id)
        except Exception:
            self._compensate_registration(email, account_id)
            raise
        return account

    def create_central_admin(self, email: str, password: str, display_name: str) -> UserAccount:
        """Bootstrap-only path; the HTTP surface has no admin-creation endpoint."""
        email = self._validate_email(email)
        self._validate_password(password)
        account_id = self._ids.new("A-")
        self._reserve_email(email, account_id)
        return self._create_account(
            account_id, Role.CENTRAL_ADMIN, email, display_name, None, password, "en", active=True
        )

    # -- authentication --------------------------------------------------------

    def authenticate(self, email: str, password: str) -> AuthToken:
        account = self.find_by_email(email)
        if account is None or not verify_password(password, account.password_digest):
            raise InvalidCredentials("wrong email or password")
        if not account.active:
            if account.role is Role.CITY_EMPLOYEE:
                raise AccountRemoved("employee account was removed")
            raise AccountInactive("account is not verified")
        token = self._token_factory()
        expires_at = self._clock() + self._token_ttl
        self._store.put(
            SESSIONS,
            token,
            {
                "account_id": account.id,
                "role": account.role.value,
                "city": account.city,
                "expires_at": to_iso(expires_at),
            },
        )
        return AuthToken(token, account.id, account.role, account.city, expires_at)

    def introspect(self, token: str) -> UserAccount:
        """Maps a bearer token back to its account; removal kills the session."""
        try:
            doc = self._store.get(SESSIONS, token)
        except NotFound:
            raise InvalidCredentials("unknown token") from None
        if from_iso(doc.body["expires_at"]) <= self._clock():
            raise TokenExpired("session expired")
        try:
            account = self.get(doc.body["account_id"])
        except NotFound:
            raise InvalidCredentials("account gone") from None
        if not account.active:
            raise InvalidCredentials("account inactive")
        return account

    # -- removal ---------------------------------------------------------------

    def remove_employee(self, actor_id: str, employee_account_id: str) -> UserAccount:
        actor = self.get(actor_id)
        if actor.role is not Role.CENTRAL_ADMIN:
            raise PermissionDenied("only the central admin removes employees")
        try:
            target_doc = self._store.get(ACCOUNTS, employee_account_id)
        except NotFound:
            raise NotFound(f"account {employee_account_id} not found") from None
        target = _account_from_doc(target_doc)
        if target.role is not Role.CITY_EMPLOYEE:
            raise InvalidTarget("target is not a city employee")
        if not target.active:
            raise NotFound("account already removed")

        updated = self._store.put(
            ACCOUNTS, target_doc.key, dict(target_doc.body, active=False), target_doc.revision
        )
        self._invalidate_sessions(target.id)
        self._release_email(target.email)
        self._mailer.send(
            target.email,
            REMOVAL_MAIL_KEYS[0],
            REMOVAL_MAIL_KEYS[1],
            (target.city or "",),
            target.language_pref,
        )
        self._notifications.emit(target.id, NotificationKind.ACCOUNT_REMOVED)
        return _account_from_doc(updated)

    def list_employees(self) -> list[UserAccount]:
        docs = self._store.query(
            ACCOUNTS, lambda d: d.body["role"] == Role.CITY_EMPLOYEE.value and d.body["active"]
        )
        employees = [_account_from_doc(d) for d in docs]
        employees.sort(key=lambda a: (a.created_at, a.id))
        return employees

    # -- internals ---------------------------------------------------------------

    def _validate_email(self, email: str) -> str:
        email = email.strip()
        if not _EMAIL_RE.match(email):
            raise ValueError(f"not an email address: {email!r}")
        return email

    def _validate_password(self, password: str) -> None:
        if len(password) < MIN_PASSWORD_LENGTH:
            raise WeakPassword(f"password shorter than {MIN_PASSWORD_LENGTH} characters")

    def _reserve_email(self, email: str, account_id: str) -> None:
        try:
            self._store.put(EMAILS, email.lower(), {"account_id": account_id})
        except AlreadyExists:
            raise EmailInUse(f"{email} is already registered") from None

    def _release_email(self, email: str) -> None:
        try:
            doc = self._store.get(EMAILS, email.lower())
            self._store.delete(EMAILS, email.lower(), doc.revision)
        except (NotFound, Conflict):
            pass

    def _create_account(
        self,
        account_id: str,
        role: Role,
        email: str,
        display_name: str,
        city: str | None,
        password: str,
        language_pref: str,
        active: bool,
    ) -> UserAccount:
        body = {
            "id": account_id,
            "role": role.value,
            "email": email,
            "display_name": display_name,
            "city": city,
            "active": active,
            "language_pref": language_pref,
            "created_at": to_iso(self._clock()),
            "password_digest": hash_password(password, self._hash_iterations),
        }
        return _account_from_doc(self._store.put(ACCOUNTS, account_id, body))

    def _compensate_registration(self, email: str, account_id: str) -> None:
        try:
            doc = self._store.get(ACCOUNTS, account_id)
            self._store.delete(ACCOUNTS, account_id, doc.revision)
        except (NotFound, Conflict):
            pass
        self._release_email(email)

    def _invalidate_sessions(self, account_id: str) -> None:
        for doc in self._store.query(SESSIONS, lambda d: d.body["account_id"] == account_id):
            try:
                self._store.delete(SESSIONS, doc.key, doc.revision)
            except (NotFound, Conflict):
                pass
