from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

from citysolution.errors import (
    AlreadyExists,
    Conflict,
    CorruptSnapshot,
    EmptyBlob,
    NotFound,
)
from citysolution.storage import FileStore, MemoryStore


class TestDocuments:
    def test_create_then_cas_update(self):
        store = MemoryStore()
        doc = store.put("c", "k", {"v": 1})
        assert doc.revision == 1
        doc = store.put("c", "k", {"v": 2}, expected_revision=1)
        assert doc.revision == 2
        assert store.get("c", "k").body == {"v": 2}

    def test_stale_revision_conflicts(self):
        store = MemoryStore()
        store.put("c", "k", {"v": 1})
        store.put("c", "k", {"v": 2}, expected_revision=1)
        with pytest.raises(Conflict):
            store.put("c", "k", {"v": 3}, expected_revision=1)

    def test_create_existing_key(self):
        store = MemoryStore()
        store.put("c", "k", {})
        with pytest.raises(AlreadyExists):
            store.put("c", "k", {})

    def test_update_missing_key(self):
        store = MemoryStore()
        with pytest.raises(NotFound):
            store.put("c", "k", {}, expected_revision=1)

    def test_get_missing(self):
        store = MemoryStore()
        with pytest.raises(NotFound):
            store.get("c", "nope")

    def test_delete_cas(self):
        store = MemoryStore()
        store.put("c", "k", {})
        with pytest.raises(Conflict):
            store.delete("c", "k", 99)
        store.delete("c", "k", 1)
        with pytest.raises(NotFound):
            store.get("c", "k")

    def test_bodies_are_isolated_copies(self):
        store = MemoryStore()
        body = {"v": [1, 2]}
        store.put("c", "k", body)
        body["v"].append(3)
        fetched = store.get("c", "k")
        assert fetched.body == {"v": [1, 2]}
        fetched.body["v"].append(9)
        assert store.get("c", "k").body == {"v": [1, 2]}

    def test_query_filters_collection(self):
        store = MemoryStore()
        store.put("a", "1", {"n": 1})
        store.put("a", "2", {"n": 2})
        store.put("b", "1", {"n": 3})
        docs = store.query("a", lambda d: d.body["n"] > 1)
        assert [d.key for d in docs] == ["2"]


class TestBlobs:
    def test_round_trip(self):
        store = MemoryStore()
        ref = store.put_blob(b"abc", "text/plain")
        assert ref.length == 3
        assert store.get_blob(ref) == b"abc"
        assert store.get_blob(ref.id) == b"abc"

    def test_content_addressing(self):
        store = MemoryStore()
        assert store.put_blob(b"same", "x") == store.put_blob(b"same", "x")

    def test_empty_blob(self):
        store = MemoryStore()
        with pytest.raises(EmptyBlob):
            store.put_blob(b"", "x")

    def test_missing_blob(self):
        store = MemoryStore()
        with pytest.raises(NotFound):
            store.get_blob("0" * 64)


class TestConcurrency:
    def test_exactly_one_concurrent_create_wins(self):
        store = MemoryStore()
        n = 32
        barrier = threading.Barrier(n)
        outcomes = []

        def attempt(i):
            barrier.wait()
            try:
                store.put("c", "contested", {"winner": i})
                return "ok"
            except AlreadyExists:
                return "exists"

        with ThreadPoolExecutor(max_workers=n) as pool:
            outcomes = list(pool.map(attempt, range(n)))
        assert outcomes.count("ok") == 1
        assert outcomes.count("exists") == n - 1

    def test_cas_linearizable_under_contention(self):
        store = MemoryStore()
        store.put("c", "counter", {"n": 0})
        successes = []
        lock = threading.Lock()

        def writer():
            wins = 0
            for _ in range(50):
                doc = store.get("c", "counter")
                try:
                    store.put("c", "counter", {"n": doc.body["n"] + 1}, doc.revision)
                    wins += 1
                except Conflict:
                    pass
            with lock:
                successes.append(wins)

        threads = [threading.Thread(target=writer) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        final = store.get("c", "counter")
        assert final.revision == 1 + sum(successes)
        assert final.body["n"] == sum(successes)


class TestSnapshots:
    def _populated(self):
        store = MemoryStore()
        for i in range(100):
            store.put("docs", f"k{i:03d}", {"i": i, "name": f"item {i}"})
        store.put_blob(b"\x00\x01\x02", "application/octet-stream")
        store.put_blob(b"image-bytes", "image/png")
        return store

    def test_round_trip_is_identity(self, tmp_path):
        store = self._populated()
        path = tmp_path / "store.snap"
        store.snapshot_to_file(path)

        loaded = MemoryStore()
        loaded.load_from_file(path)
        assert loaded.snapshot_bytes() == store.snapshot_bytes()
        assert loaded.get("docs", "k042").body == {"i": 42, "name": "item 42"}
        assert loaded.get_blob(store.put_blob(b"image-bytes", "image/png")) == b"image-bytes"

    def test_revisions_survive(self, tmp_path):
        store = MemoryStore()
        store.put("c", "k", {"v": 1})
        store.put("c", "k", {"v": 2}, 1)
        path = tmp_path / "store.snap"
        store.snapshot_to_file(path)
        loaded = MemoryStore()
        loaded.load_from_file(path)
        assert loaded.get("c", "k").revision == 2

    def test_empty_store_round_trip(self, tmp_path):
        store = MemoryStore()
        path = tmp_path / "empty.snap"
        store.snapshot_to_file(path)
        loaded = MemoryStore()
        loaded.load_from_file(path)
        assert loaded.snapshot_bytes() == store.snapshot_bytes()

    def test_truncated_file_leaves_store_unchanged(self, tmp_path):
        store = self._populated()
        path = tmp_path / "store.snap"
        store.snapshot_to_file(path)
        data = path.read_bytes()
        path.write_bytes(data[: len(data) // 2])

        target = MemoryStore()
        target.put("keep", "me", {"v": 1})
        before = target.snapshot_bytes()
        with pytest.raises(CorruptSnapshot):
            target.load_from_file(path)
        assert target.snapshot_bytes() == before

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "bad.snap"
        path.write_bytes(b"NOTASTORE abc\n")
        with pytest.raises(CorruptSnapshot):
            MemoryStore().load_from_file(path)

    def test_checksum_mismatch_rejected(self, tmp_path):
        store = self._populated()
        path = tmp_path / "store.snap"
        store.snapshot_to_file(path)
        data = bytearray(path.read_bytes())
        data[-2] ^= 0xFF
        path.write_bytes(bytes(data))
        with pytest.raises(CorruptSnapshot):
            MemoryStore().load_from_file(path)

    def test_header_format(self, tmp_path):
        store = MemoryStore()
        store.put("c", "k", {})
        first_line = store.snapshot_bytes().split(b"\n", 1)[0].decode()
        name, checksum = first_line.split(" ")
        assert name == "CSSTORE1"
        assert len(checksum) == 64


class TestFileStore:
    def test_mutations_persist_automatically(self, tmp_path):
        path = tmp_path / "live.snap"
        store = FileStore(path)
        store.put("c", "k", {"v": 1})
        store.put_blob(b"blob", "text/plain")

        reopened = FileStore(path)
        assert reopened.get("c", "k").body == {"v": 1}
        assert reopened.get_blob(store.put_blob(b"blob", "text/plain")) == b"blob"

    def test_delete_persists(self, tmp_path):
        path = tmp_path / "live.snap"
        store = FileStore(path)
        store.put("c", "k", {"v": 1})
        store.delete("c", "k", 1)
        reopened = FileStore(path)
        with pytest.raises(NotFound):
            reopened.get("c", "k")
