from __future__ import annotations

import base64
from dataclasses import dataclass

import pytest
from fastapi.testclient import TestClient

from citysolution.accounts import RecordingMailer
from citysolution.api.app import ERROR_STATUS, create_app
from citysolution.api.config import ApiConfig
from citysolution.api.context import ServiceContext, build_context
from citysolution.errors import ERRORS_BY_CODE
from citysolution.i18n import catalog
from citysolution.storage import MemoryStore

from conftest import (
    CLASS_COLORS,
    FAST_HASH_ITERATIONS,
    KHULNA,
    KOLKATA,
    SequentialIds,
    SequentialTokens,
    TickingClock,
    color_model,
    make_image,
)


@dataclass
class Harness:
    client: TestClient
    ctx: ServiceContext
    mailer: RecordingMailer
    clock: TickingClock

    # -- shortcuts ----------------------------------------------------------

    def register_and_verify(self, email, name="Citizen", language="en"):
        r = self.client.post(
            "/api/register/citizen",
            json={"email": email, "password": "password123", "display_name": name, "language": language},
        )
        assert r.status_code == 201, r.text
        token = self.mailer.outbox[-1].params[0]
        r = self.client.post("/api/verify-email", json={"token": token})
        assert r.status_code == 200, r.text
        return r.json()["account"]

    def login(self, email, password="password123"):
        r = self.client.post("/api/login", json={"email": email, "password": password})
        assert r.status_code == 200, r.text
        return r.json()["token"]

    def auth(self, token):
        return {"Authorization": f"Bearer {token}"}

    def bootstrap_admin(self, email="admin@example.org"):
        account = self.ctx.accounts.create_central_admin(email, "password123", "Admin")
        return account, self.login(email)

    def employee_token(self, city="Khulna", email=None, employee_id=None):
        _, admin_token = self.bootstrap_admin(f"admin-{city.lower()}@example.org")
        employee_id = employee_id or f"EMP-{city.upper()}"
        r = self.client.post(
            "/api/admin/credentials",
            headers=self.auth(admin_token),
            json={"employee_id": employee_id, "first_name": "First", "last_name": "Last", "city": city},
        )
        assert r.status_code == 201, r.text
        payload = r.json()["payload"]
        email = email or f"{employee_id.lower()}@example.org"
        r = self.client.post(
            "/api/register/employee",
            json={"payload": payload, "email": email, "password": "password123"},
        )
        assert r.status_code == 201, r.text
        return self.login(email)

    def submit(self, token, city_point=KHULNA, rgb=(0, 255, 0), note=None):
        body = {
            "image_base64": base64.b64encode(make_image(rgb)).decode(),
            "location": {"latitude": city_point[0], "longitude": city_point[1], "source": "Auto"},
            "note": note,
        }
        return self.client.post("/api/complaints", headers=self.auth(token), json=body)


def build_harness(default_language="en") -> Harness:
    clock = TickingClock()
    mailer = RecordingMailer()
    ctx = build_context(
        config=ApiConfig(default_language=default_language),
        store=MemoryStore(),
        mailer=mailer,
        clock=clock,
        ids=SequentialIds(),
        token_factory=SequentialTokens(),
        model=color_model(),
        hash_iterations=FAST_HASH_ITERATIONS,
    )
    return Harness(TestClient(create_app(ctx)), ctx, mailer, clock)


@pytest.fixture
def api() -> Harness:
    return build_harness()


class TestErrorContract:
    def test_every_platform_error_has_exactly_one_status(self):
        missing = set(ERRORS_BY_CODE) - set(ERROR_STATUS)
        assert not missing, f"unmapped error codes: {missing}"

    def test_every_error_code_is_localized_in_both_catalogs(self):
        for code in ERROR_STATUS:
            assert f"error.{code}" in catalog("en")
            assert f"error.{code}" in catalog("bn")


class TestRegistrationFlow:
    def test_citizen_register_verify_login(self, api):
        account = api.register_and_verify("a@b.cd", "Ayesha")
        assert account["active"] is True
        assert account["role"] == "Citizen"
        token = api.login("a@b.cd")
        assert token

    def test_duplicate_email_conflict(self, api):
        api.register_and_verify("a@b.cd")
        r = api.client.post(
            "/api/register/citizen",
            json={"email": "a@b.cd", "password": "password123", "display_name": "X"},
        )
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "EmailInUse"

    def test_weak_password_rejected(self, api):
        r = api.client.post(
            "/api/register/citizen",
            json={"email": "a@b.cd", "password": "short", "display_name": "X"},
        )
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "WeakPassword"

    def test_bad_email_shape_is_a_validation_error(self, api):
        r = api.client.post(
            "/api/register/citizen",
            json={"email": "nope", "password": "password123", "display_name": "X"},
        )
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "ValidationError"

    def test_unverified_login_unauthorized(self, api):
        api.client.post(
            "/api/register/citizen",
            json={"email": "a@b.cd", "password": "password123", "display_name": "X"},
        )
        r = api.client.post("/api/login", json={"email": "a@b.cd", "password": "password123"})
        assert r.status_code == 401
        assert r.json()["error"]["code"] == "AccountInactive"

    def test_employee_registration_via_credential(self, api):
        token = api.employee_token(city="Khulna")
        r = api.client.get("/api/complaints", headers=api.auth(token))
        assert r.status_code == 200

    def test_forged_credential_404(self, api):
        r = api.client.post(
            "/api/register/employee",
            json={
                "payload": "CS1|GHOST-1|No|Body|Khulna",
                "email": "ghost@example.org",
                "password": "password123",
            },
        )
        assert r.status_code == 404
        assert r.json()["error"]["code"] == "UnknownCredential"

    def test_reused_credential_conflict(self, api):
        _, admin_token = api.bootstrap_admin()
        r = api.client.post(
            "/api/admin/credentials",
            headers=api.auth(admin_token),
            json={"employee_id": "E-1", "first_name": "A", "last_name": "B", "city": "Khulna"},
        )
        payload = r.json()["payload"]
        first = api.client.post(
            "/api/register/employee",
            json={"payload": payload, "email": "one@example.org", "password": "password123"},
        )
        assert first.status_code == 201
        second = api.client.post(
            "/api/register/employee",
            json={"payload": payload, "email": "two@example.org", "password": "password123"},
        )
        assert second.status_code == 409
        assert second.json()["error"]["code"] == "AlreadyUsed"


class TestAuthBoundary:
    def test_missing_token(self, api):
        r = api.client.get("/api/complaints")
        assert r.status_code == 401
        assert r.json()["error"]["code"] == "InvalidCredentials"

    def test_expired_token(self, api):
        api.register_and_verify("a@b.cd")
        token = api.login("a@b.cd")
        api.clock.advance(hours=25)
        r = api.client.get("/api/complaints", headers=api.auth(token))
        assert r.status_code == 401
        assert r.json()["error"]["code"] == "TokenExpired"

    def test_stats_are_public(self, api):
        assert api.client.get("/api/stats/status").status_code == 200
        assert api.client.get("/api/stats/category?city=Khulna").status_code == 200


class TestComplaintEndpoints:
    def test_submission_returns_classified_pending_complaint(self, api):
        api.register_and_verify("a@b.cd")
        token = api.login("a@b.cd")
        r = api.submit(token, rgb=CLASS_COLORS["Flood"], note="water rising")
        assert r.status_code == 201, r.text
        complaint = r.json()["complaint"]
        assert complaint["status"] == "Pending"
        assert complaint["category"] == "Flood"
        assert complaint["city"] == "Khulna"
        assert complaint["category_source"] == "Model"

    def test_outside_country_422(self, api):
        api.register_and_verify("a@b.cd")
        token = api.login("a@b.cd")
        r = api.submit(token, city_point=KOLKATA)
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "OutsideCountry"

    def test_invalid_base64_400(self, api):
        api.register_and_verify("a@b.cd")
        token = api.login("a@b.cd")
        r = api.client.post(
            "/api/complaints",
            headers=api.auth(token),
            json={
                "image_base64": "!!!not-base64!!!",
                "location": {"latitude": KHULNA[0], "longitude": KHULNA[1]},
            },
        )
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "InvalidImage"

    def test_out_of_range_latitude_is_validation_error(self, api):
        api.register_and_verify("a@b.cd")
        token = api.login("a@b.cd")
        r = api.client.post(
            "/api/complaints",
            headers=api.auth(token),
            json={
                "image_base64": base64.b64encode(make_image()).decode(),
                "location": {"latitude": 120.0, "longitude": 10.0},
            },
        )
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "ValidationError"

    def test_employee_cannot_fetch_other_city_complaint(self, api):
        api.register_and_verify("a@b.cd")
        citizen_token = api.login("a@b.cd")
        complaint = api.submit(citizen_token).json()["complaint"]  # Khulna
        outsider_token = api.employee_token(city="Dhaka")
        r = api.client.get(f"/api/complaints/{complaint['id']}", headers=api.auth(outsider_token))
        assert r.status_code == 403
        assert r.json()["error"]["code"] == "PermissionDenied"

    def test_unknown_complaint_404(self, api):
        api.register_and_verify("a@b.cd")
        token = api.login("a@b.cd")
        r = api.client.get("/api/complaints/C-nope", headers=api.auth(token))
        assert r.status_code == 404

    def test_invalid_transition_422(self, api):
        api.register_and_verify("a@b.cd")
        citizen_token = api.login("a@b.cd")
        complaint = api.submit(citizen_token).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")
        ok = api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Solved"},
        )
        assert ok.status_code == 200
        back = api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Processing"},
        )
        assert back.status_code == 422
        assert back.json()["error"]["code"] == "InvalidTransition"

    def test_fake_locks_complaint_over_http(self, api):
        api.register_and_verify("a@b.cd")
        citizen_token = api.login("a@b.cd")
        complaint = api.submit(citizen_token).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")
        r = api.client.post(
            f"/api/complaints/{complaint['id']}/fake", headers=api.auth(employee_token)
        )
        assert r.status_code == 200
        r = api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Processing"},
        )
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "FakeLocked"

    def test_map_and_contact_links(self, api):
        api.register_and_verify("a@b.cd")
        citizen_token = api.login("a@b.cd")
        complaint = api.submit(citizen_token).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")

        r = api.client.get(
            f"/api/complaints/{complaint['id']}/map-link", headers=api.auth(employee_token)
        )
        assert r.json()["url"] == (
            "https://www.google.com/maps/search/?api=1&query=22.845600,89.540300"
        )
        r = api.client.get(
            f"/api/complaints/{complaint['id']}/contact-link", headers=api.auth(employee_token)
        )
        assert r.json()["url"] == f"mailto:a@b.cd?subject=Complaint%20{complaint['id']}"


class TestNotificationsAndLanguage:
    def test_notification_messages_localized_per_account_pref(self, api):
        api.register_and_verify("bn@example.org", language="bn")
        citizen_token = api.login("bn@example.org")
        complaint = api.submit(citizen_token).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")
        api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Processing"},
        )
        r = api.client.get("/api/notifications", headers=api.auth(citizen_token))
        notes = r.json()["notifications"]
        assert len(notes) == 1
        message = notes[0]["message"]
        assert "status.processing" not in message  # params resolved, no raw keys
        assert any(ord(ch) > 127 for ch in message)

    def test_accept_language_header_overrides_account_pref(self, api):
        api.register_and_verify("en@example.org", language="en")
        citizen_token = api.login("en@example.org")
        complaint = api.submit(citizen_token).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")
        api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Solved"},
        )
        r = api.client.get(
            "/api/notifications",
            headers={**api.auth(citizen_token), "Accept-Language": "bn-BD,bn;q=0.9"},
        )
        message = r.json()["notifications"][0]["message"]
        assert any(ord(ch) > 127 for ch in message)

    def test_error_message_localized_from_header(self, api):
        r = api.client.post(
            "/api/login",
            json={"email": "ghost@example.org", "password": "password123"},
            headers={"Accept-Language": "bn"},
        )
        assert r.status_code == 401
        assert any(ord(ch) > 127 for ch in r.json()["error"]["message"])

    def test_mark_notification_read(self, api):
        api.register_and_verify("a@b.cd")
        citizen_token = api.login("a@b.cd")
        complaint = api.submit(citizen_token).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")
        api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Processing"},
        )
        notes = api.client.get("/api/notifications", headers=api.auth(citizen_token)).json()[
            "notifications"
        ]
        r = api.client.post(
            f"/api/notifications/{notes[0]['id']}/read", headers=api.auth(citizen_token)
        )
        assert r.json()["notification"]["read"] is True

    def test_cannot_read_foreign_notification(self, api):
        api.register_and_verify("a@b.cd")
        api.register_and_verify("b@b.cd")
        token_a = api.login("a@b.cd")
        token_b = api.login("b@b.cd")
        complaint = api.submit(token_a).json()["complaint"]
        employee_token = api.employee_token(city="Khulna")
        api.client.post(
            f"/api/complaints/{complaint['id']}/status",
            headers=api.auth(employee_token),
            json={"status": "Processing"},
        )
        notes = api.client.get("/api/notifications", headers=api.auth(token_a)).json()[
            "notifications"
        ]
        r = api.client.post(f"/api/notifications/{notes[0]['id']}/read", headers=api.auth(token_b))
        assert r.status_code == 403


class TestAdminEndpoints:
    def test_credential_generation_requires_admin(self, api):
        api.register_and_verify("a@b.cd")
        citizen_token = api.login("a@b.cd")
        r = api.client.post(
            "/api/admin/credentials",
            headers=api.auth(citizen_token),
            json={"employee_id": "E-1", "first_name": "A", "last_name": "B", "city": "Khulna"},
        )
        assert r.status_code == 403

    def test_duplicate_credential_conflict(self, api):
        _, admin_token = api.bootstrap_admin()
        body = {"employee_id": "E-1", "first_name": "A", "last_name": "B", "city": "Khulna"}
        assert (
            api.client.post(
                "/api/admin/credentials", headers=api.auth(admin_token), json=body
            ).status_code
            == 201
        )
        r = api.client.post("/api/admin/credentials", headers=api.auth(admin_token), json=body)
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "DuplicateCredential"

    def test_employee_roster_and_removal(self, api):
        employee_token = api.employee_token(city="Khulna", email="emp@kcc.gov.bd")
        admin_token = api.login("admin-khulna@example.org")

        roster = api.client.get("/api/admin/employees", headers=api.auth(admin_token)).json()[
            "employees"
        ]
        assert len(roster) == 1
        target = roster[0]

        mails_before = len(api.mailer.outbox)
        r = api.client.delete(
            f"/api/admin/employees/{target['id']}", headers=api.auth(admin_token)
        )
        assert r.status_code == 200
        assert r.json()["removed"] is True
        assert len(api.mailer.outbox) == mails_before + 1

        # outstanding employee token now fails introspection
        r = api.client.get("/api/complaints", headers=api.auth(employee_token))
        assert r.status_code == 401

        roster_after = api.client.get(
            "/api/admin/employees", headers=api.auth(admin_token)
        ).json()["employees"]
        assert roster_after == []


class TestStatelessness:
    SCRIPT_NOTE = "replayed request log"

    def _run_script(self, harness: Harness) -> list[tuple[int, dict]]:
        """A fixed request log; deterministic contexts must answer identically."""
        responses = []

        def record(r):
            responses.append((r.status_code, r.json()))
            return r

        record(
            harness.client.post(
                "/api/register/citizen",
                json={
                    "email": "replay@example.org",
                    "password": "password123",
                    "display_name": "Replay",
                },
            )
        )
        token_value = harness.mailer.outbox[-1].params[0]
        record(harness.client.post("/api/verify-email", json={"token": token_value}))
        login = record(
            harness.client.post(
                "/api/login", json={"email": "replay@example.org", "password": "password123"}
            )
        )
        bearer = login.json()["token"]
        record(harness.submit(bearer, note=self.SCRIPT_NOTE))
        record(harness.client.get("/api/complaints", headers=harness.auth(bearer)))
        record(harness.client.get("/api/stats/status"))
        record(harness.client.get("/api/stats/category?city=Khulna"))
        record(harness.client.get("/api/complaints", headers={"Authorization": "Bearer bogus"}))
        return responses

    def test_two_fresh_instances_answer_identically(self):
        first = self._run_script(build_harness())
        second = self._run_script(build_harness())
        assert first == second
