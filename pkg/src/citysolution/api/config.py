"""Service configuration from a JSON file with CITYSOLUTION_* env overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from typing import Any, Mapping

ENV_PREFIX = "CITYSOLUTION_"

_ENV_KEYS = {
    "host": "HOST",
    "port": "PORT",
    "country_code": "COUNTRY_CODE",
    "geocoder_path": "GEOCODER_PATH",
    "model_path": "MODEL_PATH",
    "snapshot_path": "SNAPSHOT_PATH",
    "token_ttl_hours": "TOKEN_TTL_HOURS",
    "default_language": "DEFAULT_LANGUAGE",
}

_INT_FIELDS = {"port", "token_ttl_hours"}


@dataclass
class ApiConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    country_code: str = "BD"
    geocoder_path: str | None = None  # None -> packaged city-box fixture
    model_path: str | None = None
    snapshot_path: str | None = None  # None -> in-memory store
    token_ttl_hours: int = 24
    default_language: str = "en"

    def validate(self) -> "ApiConfig":
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range")
        if self.default_language not in ("en", "bn"):
            raise ValueError(f"unsupported default language {self.default_language!r}")
        if self.token_ttl_hours <= 0:
            raise ValueError("token TTL must be positive")
        for label, path in (("geocoder", self.geocoder_path), ("model", self.model_path)):
            if path is not None and not os.path.exists(path):
                raise ValueError(f"{label} path does not exist: {path}")
        if self.snapshot_path is not None:
            parent = os.path.dirname(os.path.abspath(self.snapshot_path))
            if not os.path.isdir(parent):
                raise ValueError(f"snapshot directory does not exist: {parent}")
        return self


def load_config(
    path: str | os.PathLike | None = None, env: Mapping[str, str] = os.environ
) -> ApiConfig:
    """File values first, then env overrides, then validation."""
    values: dict[str, Any] = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(ApiConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        values.update(data)
    for field_name, suffix in _ENV_KEYS.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw is not None:
            values[field_name] = int(raw) if field_name in _INT_FIELDS else raw
    return ApiConfig(**values).validate()
