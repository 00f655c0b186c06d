"""Location gate and deterministic link builders.

The country gate runs every submission through a geocoder. The default
geocoder is a table of axis-aligned city bounding boxes shipped as a data
file; overlaps resolve to the first match in file order. Any real
reverse-geocoding client can implement the same two-method interface.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Protocol
from urllib.parse import quote

from .errors import NoCoordinates, NotFound, OutsideCountry, UnresolvableLocation
from .i18n import localize

DEFAULT_COUNTRY = "BD"

MAP_LINK_TEMPLATE = "https://www.google.com/maps/search/?api=1&query={lat:.6f},{lon:.6f}"
CONTACT_SUBJECT_KEY = "contact.subject"


class LocationSource(str, Enum):
    AUTO = "Auto"
    MANUAL = "Manual"


@dataclass(frozen=True)
class GeoPoint:
    """Either coordinates in range, or a manual free-text location."""

    latitude: float | None = None
    longitude: float | None = None
    source: LocationSource = LocationSource.AUTO
    manual_text: str | None = None

    def __post_init__(self):
        if self.latitude is not None and self.longitude is not None:
            if not -90.0 <= self.latitude <= 90.0:
                raise ValueError(f"latitude {self.latitude} out of range")
            if not -180.0 <= self.longitude <= 180.0:
                raise ValueError(f"longitude {self.longitude} out of range")
        else:
            if self.latitude is not None or self.longitude is not None:
                raise ValueError("latitude and longitude must be given together")
            if self.source is not LocationSource.MANUAL or not (self.manual_text or "").strip():
                raise ValueError("a point without coordinates needs manual_text")

    @property
    def has_coordinates(self) -> bool:
        return self.latitude is not None

    def to_dict(self) -> dict:
        return {
            "latitude": self.latitude,
            "longitude": self.longitude,
            "source": self.source.value,
            "manual_text": self.manual_text,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeoPoint":
        return cls(
            latitude=data.get("latitude"),
            longitude=data.get("longitude"),
            source=LocationSource(data.get("source", "Auto")),
            manual_text=data.get("manual_text"),
        )


@dataclass(frozen=True)
class ResolvedPlace:
    country_code: str
    city: str


class Geocoder(Protocol):
    def resolve(self, latitude: float, longitude: float) -> ResolvedPlace | None: ...

    def lookup_city(self, name: str) -> ResolvedPlace | None: ...


@dataclass(frozen=True)
class CityBox:
    city: str
    min_lat: float
    max_lat: float
    min_lon: float
    max_lon: float
    country_code: str

    def contains(self, latitude: float, longitude: float) -> bool:
        return (
            self.min_lat <= latitude <= self.max_lat
            and self.min_lon <= longitude <= self.max_lon
        )


class BoundingBoxGeocoder:
    """Deterministic geocoder over a list of city bounding boxes."""

    def __init__(self, boxes: list[CityBox]):
        self.boxes = list(boxes)

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "BoundingBoxGeocoder":
        with open(path, encoding="utf-8") as fh:
            entries = json.load(fh)
        return cls([CityBox(**entry) for entry in entries])

    def resolve(self, latitude: float, longitude: float) -> ResolvedPlace | None:
        for box in self.boxes:  # first match wins on overlap
            if box.contains(latitude, longitude):
                return ResolvedPlace(box.country_code, box.city)
        return None

    def lookup_city(self, name: str) -> ResolvedPlace | None:
        wanted = name.strip().lower()
        for box in self.boxes:
            if box.city.lower() == wanted:
                return ResolvedPlace(box.country_code, box.city)
        return None


def default_geocoder() -> BoundingBoxGeocoder:
    path = resources.files("citysolution.data") / "bd_city_boxes.json"
    entries = json.loads(path.read_text(encoding="utf-8"))
    return BoundingBoxGeocoder([CityBox(**entry) for entry in entries])


def gate_country(
    point: GeoPoint, geocoder: Geocoder, country_code: str = DEFAULT_COUNTRY
) -> ResolvedPlace:
    """Resolve a point and reject anything outside the configured country."""
    if point.has_coordinates:
        place = geocoder.resolve(point.latitude, point.longitude)
        if place is None:
            raise OutsideCountry(f"({point.latitude}, {point.longitude}) is not in {country_code}")
    else:
        place = geocoder.lookup_city(point.manual_text)
        if place is None:
            raise UnresolvableLocation(f"unknown location {point.manual_text!r}")
    if place.country_code != country_code:
        raise OutsideCountry(f"location resolved to {place.country_code}, expected {country_code}")
    return place


def map_link(point: GeoPoint) -> str:
    """Byte-stable map URL with coordinates printed to six decimal places."""
    if not point.has_coordinates:
        raise NoCoordinates("manual-text location has no coordinates")
    return MAP_LINK_TEMPLATE.format(lat=point.latitude, lon=point.longitude)


def contact_link(complaint, submitter, language: str = "en") -> str:
    """mailto: URL whose subject is the localized complaint reference."""
    if submitter is None or not getattr(submitter, "active", False):
        raise NotFound("submitter account is not available")
    subject = localize(CONTACT_SUBJECT_KEY, language, [complaint.id])
    return f"mailto:{submitter.email}?subject={quote(subject, safe='')}"
