"""Service error hierarchy.

Every error carries a stable machine-readable ``code`` used by the HTTP layer
and a matching ``error.<code>`` entry in both message catalogs.
"""

from __future__ import annotations


class PlatformError(Exception):
    """Base class for all service-level failures."""

    code = "PlatformError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code

    @property
    def message_key(self) -> str:
        return f"error.{self.code}"


ERRORS_BY_CODE: dict[str, type[PlatformError]] = {}


def _register(cls: type[PlatformError]) -> type[PlatformError]:
    ERRORS_BY_CODE[cls.code] = cls
    return cls


# -- complaint domain ---------------------------------------------------------

@_register
class OutsideCountry(PlatformError):
    code = "OutsideCountry"


@_register
class InvalidImage(PlatformError):
    code = "InvalidImage"


@_register
class PermissionDenied(PlatformError):
    code = "PermissionDenied"


@_register
class InvalidTransition(PlatformError):
    code = "InvalidTransition"


@_register
class FakeLocked(PlatformError):
    code = "FakeLocked"


@_register
class InvalidCategory(PlatformError):
    code = "InvalidCategory"


# -- storage ------------------------------------------------------------------

@_register
class Conflict(PlatformError):
    code = "Conflict"


@_register
class NotFound(PlatformError):
    code = "NotFound"


@_register
class AlreadyExists(PlatformError):
    code = "AlreadyExists"


@_register
class EmptyBlob(PlatformError):
    code = "EmptyBlob"


@_register
class CorruptSnapshot(PlatformError):
    code = "CorruptSnapshot"


@_register
class IoFailure(PlatformError):
    code = "IoFailure"


# -- provisioning -------------------------------------------------------------

@_register
class DuplicateCredential(PlatformError):
    code = "DuplicateCredential"


@_register
class InvalidPayloadField(PlatformError):
    code = "InvalidPayloadField"


@_register
class MalformedPayload(PlatformError):
    code = "MalformedPayload"


@_register
class UnknownCredential(PlatformError):
    code = "UnknownCredential"


@_register
class AlreadyUsed(PlatformError):
    code = "AlreadyUsed"


@_register
class FieldMismatch(PlatformError):
    code = "FieldMismatch"


# -- accounts -----------------------------------------------------------------

@_register
class EmailInUse(PlatformError):
    code = "EmailInUse"


@_register
class WeakPassword(PlatformError):
    code = "WeakPassword"


@_register
class TokenExpired(PlatformError):
    code = "TokenExpired"


@_register
class InvalidCredentials(PlatformError):
    code = "InvalidCredentials"


@_register
class AccountInactive(PlatformError):
    code = "AccountInactive"


@_register
class AccountRemoved(PlatformError):
    code = "AccountRemoved"


@_register
class InvalidTarget(PlatformError):
    code = "InvalidTarget"


# -- geo ----------------------------------------------------------------------

@_register
class NoCoordinates(PlatformError):
    code = "NoCoordinates"


@_register
class UnresolvableLocation(PlatformError):
    code = "UnresolvableLocation"


# -- classifier ---------------------------------------------------------------

@_register
class EmptyClass(PlatformError):
    code = "EmptyClass"


@_register
class ModelUnavailable(PlatformError):
    code = "ModelUnavailable"


@_register
class MissingPrediction(PlatformError):
    code = "MissingPrediction"


@_register
class LabelMismatch(PlatformError):
    code = "LabelMismatch"


@_register
class UnsupportedModelKind(PlatformError):
    code = "UnsupportedModelKind"


@_register
class CorruptArtifact(PlatformError):
    code = "CorruptArtifact"


# -- localization -------------------------------------------------------------

@_register
class MissingKey(PlatformError):
    code = "MissingKey"
