"""Versioned document store with compare-and-set plus a content-addressed blob store.

Atomicity is per document (Firebase-like): CAS on the document revision is the
only mutation primitive. Cross-entity flows order their writes and compensate
on failure. Two implementations: ``MemoryStore`` and ``FileStore`` (same
semantics, persisted to a checksummed snapshot file after every mutation).
"""

from __future__ import annotations

import base64
import copy
import hashlib
import json
import os
import threading
from dataclasses import dataclass
from typing import Any, Callable

from .errors import (
    AlreadyExists,
    Conflict,
    CorruptSnapshot,
    EmptyBlob,
    IoFailure,
    NotFound,
)

SNAPSHOT_FORMAT = "CSSTORE1"


@dataclass(frozen=True)
class Document:
    collection: str
    key: str
    body: dict[str, Any]
    revision: int


@dataclass(frozen=True)
class BlobRef:
    id: str
    length: int
    media_type: str


class MemoryStore:
    """Thread-safe in-memory store. Readers always see committed state."""

    def __init__(self):
        self._lock = threading.RLock()
        self._docs: dict[tuple[str, str], tuple[dict[str, Any], int]] = {}
        self._blobs: dict[str, tuple[bytes, str]] = {}

    # -- documents -------------------------------------------------------

    def put(
        self,
        collection: str,
        key: str,
        body: dict[str, Any],
        expected_revision: int | None = None,
    ) -> Document:
        """Create (no expected_revision) or CAS-update a document."""
        with self._lock:
            current = self._docs.get((collection, key))
            if expected_revision is None:
                if current is not None:
                    raise AlreadyExists(f"{collection}/{key} already exists")
                revision = 1
            else:
                if current is None:
                    raise NotFound(f"{collection}/{key} not found")
                if current[1] != expected_revision:
                    raise Conflict(
                        f"{collection}/{key}: expected revision {expected_revision}, at {current[1]}"
                    )
                revision = current[1] + 1
            self._docs[(collection, key)] = (copy.deepcopy(body), revision)
            self._mutated()
            return Document(collection, key, copy.deepcopy(body), revision)

    def get(self, collection: str, key: str) -> Document:
        with self._lock:
            current = self._docs.get((collection, key))
            if current is None:
                raise NotFound(f"{collection}/{key} not found")
            body, revision = current
            return Document(collection, key, copy.deepcopy(body), revision)

    def query(
        self,
        collection: str,
        predicate: Callable[[Document], bool] | None = None,
    ) -> list[Document]:
        """Point-in-time consistent snapshot of a collection."""
        with self._lock:
            docs = [
                Document(collection, key, copy.deepcopy(body), revision)
                for (coll, key), (body, revision) in self._docs.items()
                if coll == collection
            ]
        if predicate is not None:
            docs = [d for d in docs if predicate(d)]
        return docs

    def delete(self, collection: str, key: str, expected_revision: int) -> None:
        with self._lock:
            current = self._docs.get((collection, key))
            if current is None:
                raise NotFound(f"{collection}/{key} not found")
            if current[1] != expected_revision:
                raise Conflict(
                    f"{collection}/{key}: expected revision {expected_revision}, at {current[1]}"
                )
            del self._docs[(collection, key)]
            self._mutated()

    # -- blobs -------------------------------------------------------------

    def put_blob(self, data: bytes, media_type: str) -> BlobRef:
        """Content-addressed: identical bytes yield the identical ref."""
        if not data:
            raise EmptyBlob("blob is empty")
        blob_id = hashlib.sha256(data).hexdigest()
        with self._lock:
            if blob_id not in self._blobs:
                self._blobs[blob_id] = (data, media_type)
                self._mutated()
            stored_type = self._blobs[blob_id][1]
        return BlobRef(blob_id, len(data), stored_type)

    def get_blob(self, ref: BlobRef | str) -> bytes:
        blob_id = ref.id if isinstance(ref, BlobRef) else ref
        with self._lock:
            entry = self._blobs.get(blob_id)
        if entry is None:
            raise NotFound(f"blob {blob_id} not found")
        return entry[0]

    # -- snapshots ---------------------------------------------------------

    def snapshot_bytes(self) -> bytes:
        """Deterministic serialization: header line, then one JSON record per line."""
        with self._lock:
            lines: list[str] = []
            for (coll, key) in sorted(self._docs):
                body, revision = self._docs[(coll, key)]
                lines.append(
                    json.dumps(
                        {"collection": coll, "key": key, "revision": revision, "body": body},
                        sort_keys=True,
                        separators=(",", ":"),
                    )
                )
            for blob_id in sorted(self._blobs):
                data, media_type = self._blobs[blob_id]
                lines.append(
                    json.dumps(
                        {
                            "blob": blob_id,
                            "media_type": media_type,
                            "data": base64.b64encode(data).decode("ascii"),
                        },
                        sort_keys=True,
                        separators=(",", ":"),
                    )
                )
        body_bytes = "".join(line + "\n" for line in lines).encode("utf-8")
        header = f"{SNAPSHOT_FORMAT} {hashlib.sha256(body_bytes).hexdigest()}\n"
        return header.encode("ascii") + body_bytes

    def snapshot_to_file(self, path: str | os.PathLike) -> None:
        data = self.snapshot_bytes()
        tmp = f"{path}.tmp"
        try:
            with open(tmp, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except OSError as exc:
            raise IoFailure(f"snapshot write failed: {exc}") from exc

    def load_from_file(self, path: str | os.PathLike) -> None:
        """Replace store contents atomically; on any parse error the store is unchanged."""
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise IoFailure(f"snapshot read failed: {exc}") from exc
        docs, blobs = _parse_snapshot(raw)
        with self._lock:
            self._docs = docs
            self._blobs = blobs

    def _mutated(self) -> None:
        """Hook for persistent subclasses; called with the lock held."""


def _parse_snapshot(
    raw: bytes,
) -> tuple[dict[tuple[str, str], tuple[dict[str, Any], int]], dict[str, tuple[bytes, str]]]:
    newline = raw.find(b"\n")
    if newline < 0:
        raise CorruptSnapshot("missing header line")
    header = raw[:newline].decode("ascii", errors="replace").split(" ")
    if len(header) != 2 or header[0] != SNAPSHOT_FORMAT:
        raise CorruptSnapshot("unrecognized snapshot header")
    body = raw[newline + 1 :]
    if hashlib.sha256(body).hexdigest() != header[1]:
        raise CorruptSnapshot("checksum mismatch")
    docs: dict[tuple[str, str], tuple[dict[str, Any], int]] = {}
    blobs: dict[str, tuple[bytes, str]] = {}
    for line in body.splitlines():
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except ValueError as exc:
            raise CorruptSnapshot(f"bad record: {exc}") from exc
        if "blob" in record:
            try:
                blobs[record["blob"]] = (
                    base64.b64decode(record["data"]),
                    record["media_type"],
                )
            except (KeyError, ValueError) as exc:
                raise CorruptSnapshot(f"bad blob record: {exc}") from exc
        else:
            try:
                docs[(record["collection"], record["key"])] = (
                    record["body"],
                    int(record["revision"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise CorruptSnapshot(f"bad document record: {exc}") from exc
    return docs, blobs


class FileStore(MemoryStore):
    """MemoryStore persisted to a snapshot file after every successful mutation."""

    def __init__(self, path: str | os.PathLike):
        super().__init__()
        self._path = os.fspath(path)
        if os.path.exists(self._path):
            self.load_from_file(self._path)

    def _mutated(self) -> None:
        self.snapshot_to_file(self._path)
