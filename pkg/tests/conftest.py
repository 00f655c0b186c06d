from __future__ import annotations

import io
import itertools
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

import numpy as np
import pytest
from PIL import Image

from citysolution.accounts import AccountService, RecordingMailer, Role
from citysolution.classifier import MODEL_CLASSES, CentroidModel
from citysolution.complaints import ComplaintService
from citysolution.geo import default_geocoder
from citysolution.notifications import NotificationLog
from citysolution.provisioning import CredentialService
from citysolution.storage import MemoryStore

# Low iteration count keeps account-heavy tests quick; the production default
# stays in force for the end-to-end acceptance run.
FAST_HASH_ITERATIONS = 1_000


class TickingClock:
    """Advances one millisecond per call; keeps creation order unambiguous."""

    def __init__(self, start: datetime | None = None):
        self.now = start or datetime(2026, 1, 1, tzinfo=timezone.utc)
        self.step = timedelta(milliseconds=1)

    def __call__(self) -> datetime:
        self.now += self.step
        return self.now

    def advance(self, **kwargs) -> None:
        self.now += timedelta(**kwargs)


class SequentialIds:
    def __init__(self):
        self._n = itertools.count(1)

    def new(self, prefix: str = "") -> str:
        return f"{prefix}{next(self._n):06d}"


class SequentialTokens:
    def __init__(self, stem: str = "token"):
        self._n = itertools.count(1)
        self._stem = stem

    def __call__(self) -> str:
        return f"{self._stem}-{next(self._n):06d}"


def make_image(rgb=(255, 0, 0), size=(32, 32), fmt="PNG") -> bytes:
    img = Image.new("RGB", size, rgb)
    buf = io.BytesIO()
    img.save(buf, format=fmt)
    return buf.getvalue()


def make_noisy_image(rng: np.random.Generator, base_rgb, sigma=0.05, size=(32, 32)) -> bytes:
    base = np.array(base_rgb, dtype=np.float64) / 255.0
    pixels = base + rng.normal(0.0, sigma, size=(size[1], size[0], 3))
    pixels = np.clip(pixels, 0.0, 1.0)
    img = Image.fromarray((pixels * 255).astype(np.uint8), "RGB")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


# Class colors for the deterministic test model, in model-class order.
CLASS_COLORS = {
    MODEL_CLASSES[0]: (128, 128, 128),  # DamagedRoad: gray
    MODEL_CLASSES[1]: (0, 0, 255),      # Flood: blue
    MODEL_CLASSES[2]: (0, 255, 0),      # Trash: green
    MODEL_CLASSES[3]: (255, 0, 0),      # HomelessPeople: red
}


def color_model() -> CentroidModel:
    centroids = np.array([CLASS_COLORS[label] for label in MODEL_CLASSES], dtype=np.float64) / 255.0
    return CentroidModel(MODEL_CLASSES, centroids)


@dataclass
class Platform:
    store: MemoryStore
    clock: TickingClock
    ids: SequentialIds
    mailer: RecordingMailer
    notifications: NotificationLog
    accounts: AccountService
    credentials: CredentialService
    complaints: ComplaintService

    # -- seeding helpers ---------------------------------------------------

    def citizen(self, email="citizen@example.org", name="Citizen", language="en"):
        account = self.accounts.register_citizen(email, "password123", name, language)
        token = self.mailer.outbox[-1].params[0]
        return self.accounts.verify_email(token)

    def admin(self, email="admin@example.org"):
        return self.accounts.create_central_admin(email, "password123", "Central Admin")

    def employee(self, city="Khulna", email=None, admin=None, employee_id=None):
        admin = admin or self._default_admin()
        employee_id = employee_id or self.ids.new("EMP-")
        _, payload = self.credentials.generate(admin.id, employee_id, "First", "Last", city)
        email = email or f"{employee_id.lower()}@example.org"
        return self.accounts.register_employee(payload, email, "password123", self.credentials)

    def _default_admin(self):
        docs = self.store.query("accounts", lambda d: d.body["role"] == Role.CENTRAL_ADMIN.value)
        if docs:
            return self.accounts.get(docs[0].body["id"])
        return self.admin()


def build_platform(model=None) -> Platform:
    store = MemoryStore()
    clock = TickingClock()
    ids = SequentialIds()
    mailer = RecordingMailer()
    notifications = NotificationLog(store, clock, ids)
    accounts = AccountService(
        store,
        mailer,
        notifications,
        clock=clock,
        ids=ids,
        hash_iterations=FAST_HASH_ITERATIONS,
        token_factory=SequentialTokens(),
    )
    credentials = CredentialService(store, accounts, clock)
    complaints = ComplaintService(
        store,
        accounts,
        notifications,
        default_geocoder(),
        model=model if model is not None else color_model(),
        clock=clock,
        ids=ids,
    )
    return Platform(store, clock, ids, mailer, notifications, accounts, credentials, complaints)


@pytest.fixture
def platform() -> Platform:
    return build_platform()


KHULNA = (22.8456, 89.5403)
DHAKA = (23.8103, 90.4125)
CHITTAGONG = (22.3569, 91.7832)
RAJSHAHI = (24.3745, 88.6042)
SYLHET = (24.8949, 91.8687)
KOLKATA = (22.5726, 88.3639)  # outside every fixture box

CITY_POINTS = {
    "Khulna": KHULNA,
    "Dhaka": DHAKA,
    "Chittagong": CHITTAGONG,
    "Rajshahi": RAJSHAHI,
    "Sylhet": SYLHET,
}
