"""HTTP binding of the platform: auth, role routing, localization, uploads.

Every domain error maps to exactly one (HTTP status, machine-readable code)
pair; the table below is the single source of that mapping. Handlers hold no
state of their own: a request's outcome depends only on the store contents
and the request itself.
"""

from __future__ import annotations

import base64
import binascii

from fastapi import Depends, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .. import stats
from ..accounts import Role, UserAccount
from ..complaints import Complaint, StatusEvent
from ..errors import InvalidCredentials, InvalidImage, PermissionDenied, PlatformError
from ..geo import GeoPoint, LocationSource
from ..i18n import localize, negotiate_language
from ..notifications import Notification
from ..util import to_iso
from .context import ServiceContext

ERROR_STATUS: dict[str, int] = {
    # business-rule rejections
    "OutsideCountry": 422,
    "InvalidTransition": 422,
    "FakeLocked": 422,
    "InvalidCategory": 422,
    "InvalidTarget": 422,
    "NoCoordinates": 422,
    "UnresolvableLocation": 422,
    "EmptyClass": 422,
    # authorization
    "PermissionDenied": 403,
    # missing things
    "NotFound": 404,
    "UnknownCredential": 404,
    "FieldMismatch": 404,
    # write races and duplicates
    "AlreadyUsed": 409,
    "DuplicateCredential": 409,
    "EmailInUse": 409,
    "AlreadyExists": 409,
    "Conflict": 409,
    # malformed requests
    "InvalidImage": 400,
    "MalformedPayload": 400,
    "WeakPassword": 400,
    "InvalidPayloadField": 400,
    "EmptyBlob": 400,
    "MissingPrediction": 400,
    "LabelMismatch": 400,
    # authentication
    "InvalidCredentials": 401,
    "TokenExpired": 401,
    "AccountInactive": 401,
    "AccountRemoved": 401,
    # server-side faults
    "ModelUnavailable": 503,
    "MissingKey": 500,
    "UnsupportedModelKind": 500,
    "CorruptArtifact": 500,
    "CorruptSnapshot": 500,
    "IoFailure": 500,
    "PlatformError": 500,
}


# -- request bodies -----------------------------------------------------------

class RegisterCitizenBody(BaseModel):
    email: str = Field(pattern=r"^[^@\s]+@[^@\s]+\.[^@\s]+$")
    password: str
    display_name: str = Field(min_length=1)
    language: str = Field(default="en", pattern="^(en|bn)$")


class VerifyEmailBody(BaseModel):
    token: str = Field(min_length=1)


class RegisterEmployeeBody(BaseModel):
    payload: str = Field(min_length=1)
    email: str = Field(pattern=r"^[^@\s]+@[^@\s]+\.[^@\s]+$")
    password: str
    language: str = Field(default="en", pattern="^(en|bn)$")


class LoginBody(BaseModel):
    email: str
    password: str


class LocationBody(BaseModel):
    latitude: float | None = Field(default=None, ge=-90, le=90)
    longitude: float | None = Field(default=None, ge=-180, le=180)
    source: str = Field(default="Auto", pattern="^(Auto|Manual)$")
    manual_text: str | None = None

    def to_geopoint(self) -> GeoPoint:
        return GeoPoint(
            latitude=self.latitude,
            longitude=self.longitude,
            source=LocationSource(self.source),
            manual_text=self.manual_text,
        )


class SubmitComplaintBody(BaseModel):
    image_base64: str = Field(min_length=1)
    location: LocationBody
    note: str | None = None


class StatusUpdateBody(BaseModel):
    status: str
    feedback: str | None = None


class CategoryUpdateBody(BaseModel):
    category: str


class FeedbackBody(BaseModel):
    text: str = Field(min_length=1)


class CredentialBody(BaseModel):
    employee_id: str = Field(min_length=1)
    first_name: str = Field(min_length=1)
    last_name: str = Field(min_length=1)
    city: str = Field(min_length=1)


# -- serialization ------------------------------------------------------------

def complaint_json(c: Complaint) -> dict:
    return c.to_dict()


def event_json(e: StatusEvent) -> dict:
    return e.to_dict()


def account_json(a: UserAccount) -> dict:
    return a.to_public_dict()


def notification_json(n: Notification, language: str) -> dict:
    return {
        "id": n.id,
        "recipient_id": n.recipient_id,
        "kind": n.kind.value,
        "complaint_id": n.complaint_id,
        "message_key": n.message_key,
        "params": list(n.params),
        "message": localize(n.message_key, language, n.params),
        "read": n.read,
        "created_at": to_iso(n.created_at),
    }


# -- app factory ----------------------------------------------------------------

def create_app(ctx: ServiceContext) -> FastAPI:
    app = FastAPI(title="citysolution", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def request_language(request: Request, account: UserAccount | None = None) -> str:
        language = negotiate_language(
            request.headers.get("accept-language"),
            account.language_pref if account else None,
            ctx.config.default_language,
        )
        request.state.language = language
        return language

    def authenticated(request: Request) -> UserAccount:
        header = request.headers.get("authorization", "")
        scheme, _, token = header.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise InvalidCredentials("missing bearer token")
        account = ctx.accounts.introspect(token.strip())
        request_language(request, account)
        return account

    @app.exception_handler(PlatformError)
    async def platform_error_handler(request: Request, exc: PlatformError):
        language = getattr(request.state, "language", None) or negotiate_language(
            request.headers.get("accept-language"), None, ctx.config.default_language
        )
        return JSONResponse(
            status_code=ERROR_STATUS.get(exc.code, 500),
            content={"error": {"code": exc.code, "message": localize(exc.message_key, language)}},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        language = negotiate_language(
            request.headers.get("accept-language"), None, ctx.config.default_language
        )
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "ValidationError",
                    "message": localize("error.ValidationError", language),
                    "detail": exc.errors(),
                }
            },
        )

    # -- health ------------------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    # -- registration and login ----------------------------------------------

    @app.post("/api/register/citizen", status_code=201)
    def register_citizen(body: RegisterCitizenBody):
        account = ctx.accounts.register_citizen(
            body.email, body.password, body.display_name, body.language
        )
        return {"account": account_json(account)}

    @app.post("/api/verify-email")
    def verify_email(body: VerifyEmailBody):
        account = ctx.accounts.verify_email(body.token)
        return {"account": account_json(account)}

    @app.post("/api/register/employee", status_code=201)
    def register_employee(body: RegisterEmployeeBody):
        account = ctx.accounts.register_employee(
            body.payload, body.email, body.password, ctx.credentials, body.language
        )
        return {"account": account_json(account)}

    @app.post("/api/login")
    def login(body: LoginBody):
        auth = ctx.accounts.authenticate(body.email, body.password)
        return {
            "token": auth.token,
            "account_id": auth.account_id,
            "role": auth.role.value,
            "city": auth.city,
            "expires_at": to_iso(auth.expires_at),
        }

    # -- complaints ---------------------------------------------------------------

    @app.post("/api/complaints", status_code=201)
    def submit_complaint(body: SubmitComplaintBody, account: UserAccount = Depends(authenticated)):
        try:
            image_bytes = base64.b64decode(body.image_base64, validate=True)
        except (binascii.Error, ValueError):
            raise InvalidImage("image_base64 is not valid base64") from None
        complaint = ctx.complaints.submit_complaint(
            account.id, image_bytes, body.location.to_geopoint(), body.note
        )
        return {"complaint": complaint_json(complaint)}

    @app.get("/api/complaints")
    def list_complaints(
        account: UserAccount = Depends(authenticated),
        city: str | None = Query(default=None),
        status: str | None = Query(default=None, pattern="^(Pending|Processing|Solved)$"),
        category: str | None = Query(default=None),
    ):
        items = ctx.complaints.list_complaints(account.id, city=city, status=status, category=category)
        return {"complaints": [complaint_json(c) for c in items]}

    @app.get("/api/complaints/{complaint_id}")
    def get_complaint(complaint_id: str, account: UserAccount = Depends(authenticated)):
        return {"complaint": complaint_json(ctx.complaints.get_complaint(account.id, complaint_id))}

    @app.post("/api/complaints/{complaint_id}/status")
    def update_status(
        complaint_id: str, body: StatusUpdateBody, account: UserAccount = Depends(authenticated)
    ):
        event = ctx.complaints.transition_status(account.id, complaint_id, body.status, body.feedback)
        return {"event": event_json(event)}

    @app.post("/api/complaints/{complaint_id}/category")
    def update_category(
        complaint_id: str, body: CategoryUpdateBody, account: UserAccount = Depends(authenticated)
    ):
        event = ctx.complaints.reassign_category(account.id, complaint_id, body.category)
        return {"event": event_json(event)}

    @app.post("/api/complaints/{complaint_id}/fake")
    def mark_fake(complaint_id: str, account: UserAccount = Depends(authenticated)):
        event = ctx.complaints.mark_fake(account.id, complaint_id)
        return {"event": event_json(event)}

    @app.post("/api/complaints/{complaint_id}/feedback")
    def send_feedback(
        complaint_id: str, body: FeedbackBody, account: UserAccount = Depends(authenticated)
    ):
        event = ctx.complaints.send_feedback(account.id, complaint_id, body.text)
        return {"event": event_json(event)}

    @app.get("/api/complaints/{complaint_id}/map-link")
    def map_link(complaint_id: str, account: UserAccount = Depends(authenticated)):
        return {"url": ctx.complaints.map_link(account.id, complaint_id)}

    @app.get("/api/complaints/{complaint_id}/contact-link")
    def contact_link(
        request: Request, complaint_id: str, account: UserAccount = Depends(authenticated)
    ):
        language = request_language(request, account)
        return {"url": ctx.complaints.contact_link(account.id, complaint_id, language)}

    # -- statistics (public, read-only) ----------------------------------------------

    @app.get("/api/stats/status")
    def stats_status(city: str | None = Query(default=None)):
        return stats.chart_series(stats.status_breakdown(ctx.store, city or None))

    @app.get("/api/stats/category")
    def stats_category(city: str | None = Query(default=None)):
        return stats.chart_series(stats.category_breakdown(ctx.store, city or None))

    # -- notifications -----------------------------------------------------------------

    @app.get("/api/notifications")
    def list_notifications(request: Request, account: UserAccount = Depends(authenticated)):
        language = request_language(request, account)
        items = ctx.notifications.list_for(account.id)
        return {"notifications": [notification_json(n, language) for n in items]}

    @app.post("/api/notifications/{notification_id}/read")
    def mark_notification_read(
        request: Request, notification_id: str, account: UserAccount = Depends(authenticated)
    ):
        language = request_language(request, account)
        notification = ctx.notifications.mark_read(account.id, notification_id)
        return {"notification": notification_json(notification, language)}

    # -- admin ----------------------------------------------------------------------------

    @app.post("/api/admin/credentials", status_code=201)
    def generate_credential(body: CredentialBody, account: UserAccount = Depends(authenticated)):
        record, payload_text = ctx.credentials.generate(
            account.id, body.employee_id, body.first_name, body.last_name, body.city
        )
        return {"credential": record.to_dict(), "payload": payload_text}

    @app.get("/api/admin/employees")
    def list_employees(account: UserAccount = Depends(authenticated)):
        if account.role is not Role.CENTRAL_ADMIN:
            raise PermissionDenied("admin only")
        return {"employees": [account_json(a) for a in ctx.accounts.list_employees()]}

    @app.delete("/api/admin/employees/{account_id}")
    def remove_employee(account_id: str, account: UserAccount = Depends(authenticated)):
        removed = ctx.accounts.remove_employee(account.id, account_id)
        return {"removed": True, "email_dispatched": True, "account": account_json(removed)}

    return app
