"""Bilingual message catalogs (English and Bengali) with English fallback.

Templates use positional ``{0}`` placeholders. A substitution parameter that
is itself a catalog key (e.g. a status label key carried inside a stored
notification) is localized before substitution, so rendered text never leaks
raw keys.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .errors import MissingKey

SUPPORTED_LANGUAGES = ("en", "bn")
FALLBACK_LANGUAGE = "en"


@lru_cache(maxsize=None)
def catalog(language: str) -> dict[str, str]:
    """Load the packaged catalog for a language tag."""
    if language not in SUPPORTED_LANGUAGES:
        raise MissingKey(f"unsupported language {language!r}")
    path = resources.files("citysolution.data") / f"messages_{language}.json"
    return json.loads(path.read_text(encoding="utf-8"))


def is_known_key(key: str) -> bool:
    return key in catalog(FALLBACK_LANGUAGE) or key in catalog("bn")


def template_for(key: str, language: str) -> str:
    """Requested catalog first, then the English fallback."""
    entries = catalog(language if language in SUPPORTED_LANGUAGES else FALLBACK_LANGUAGE)
    if key in entries:
        return entries[key]
    fallback = catalog(FALLBACK_LANGUAGE)
    if key in fallback:
        return fallback[key]
    raise MissingKey(f"no catalog entry for {key!r}")


def localize(key: str, language: str = FALLBACK_LANGUAGE, params: tuple[str, ...] | list[str] = ()) -> str:
    resolved = [
        template_for(p, language) if isinstance(p, str) and is_known_key(p) else p
        for p in params
    ]
    return template_for(key, language).format(*resolved)


def negotiate_language(header: str | None, account_pref: str | None, default: str) -> str:
    """Accept-Language-style header beats the account preference beats the default."""
    if header:
        for entry in header.split(","):
            tag = entry.split(";")[0].strip().lower()
            base = tag.split("-")[0]
            if base in SUPPORTED_LANGUAGES:
                return base
    if account_pref in SUPPORTED_LANGUAGES:
        return account_pref
    return default if default in SUPPORTED_LANGUAGES else FALLBACK_LANGUAGE
