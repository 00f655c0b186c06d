"""Wires the stores, services, geocoder, and model into one service context."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import timedelta
from typing import Callable

from ..accounts import AccountService, MailSender, RecordingMailer
from ..classifier import Model, load_model
from ..complaints import ComplaintService
from ..geo import BoundingBoxGeocoder, Geocoder, default_geocoder
from ..i18n import localize
from ..notifications import NotificationLog
from ..provisioning import CredentialService
from ..storage import FileStore, MemoryStore
from ..util import Clock, IdFactory, utc_now
from .config import ApiConfig

logger = logging.getLogger(__name__)


class LoggingMailer:
    """Default outbound mail path for dev deployments: logs the localized text."""

    def send(self, to, subject_key, body_key, params, language):
        subject = localize(subject_key, language)
        body = localize(body_key, language, tuple(params))
        logger.info("mail to %s: %s | %s", to, subject, body)


@dataclass
class ServiceContext:
    config: ApiConfig
    store: MemoryStore
    accounts: AccountService
    credentials: CredentialService
    complaints: ComplaintService
    notifications: NotificationLog
    mailer: MailSender
    geocoder: Geocoder
    model: Model | None


def build_context(
    config: ApiConfig | None = None,
    store: MemoryStore | None = None,
    mailer: MailSender | None = None,
    clock: Clock = utc_now,
    ids: IdFactory | None = None,
    token_factory: Callable[[], str] | None = None,
    model: Model | None = None,
    hash_iterations: int | None = None,
) -> ServiceContext:
    config = config or ApiConfig()
    if store is None:
        store = FileStore(config.snapshot_path) if config.snapshot_path else MemoryStore()
    mailer = mailer or LoggingMailer()
    ids = ids or IdFactory()
    geocoder = (
        BoundingBoxGeocoder.from_file(config.geocoder_path)
        if config.geocoder_path
        else default_geocoder()
    )
    if model is None and config.model_path:
        model = load_model(config.model_path)

    notifications = NotificationLog(store, clock, ids)
    account_kwargs = {} if hash_iterations is None else {"hash_iterations": hash_iterations}
    accounts = AccountService(
        store,
        mailer,
        notifications,
        clock=clock,
        ids=ids,
        token_ttl=timedelta(hours=config.token_ttl_hours),
        token_factory=token_factory,
        **account_kwargs,
    )
    credentials = CredentialService(store, accounts, clock)
    complaints = ComplaintService(
        store,
        accounts,
        notifications,
        geocoder,
        model=model,
        country_code=config.country_code,
        clock=clock,
        ids=ids,
    )
    return ServiceContext(
        config=config,
        store=store,
        accounts=accounts,
        credentials=credentials,
        complaints=complaints,
        notifications=notifications,
        mailer=mailer,
        geocoder=geocoder,
        model=model,
    )


def recording_context(config: ApiConfig | None = None, **kwargs) -> ServiceContext:
    """In-memory context with a recording mailer; what the tests drive."""
    return build_context(config=config, store=MemoryStore(), mailer=RecordingMailer(), **kwargs)
