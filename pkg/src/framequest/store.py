"""Append-only persistence of finalized response records.

One compact JSON document per line, LF-terminated, UTF-8. Appends take an
advisory file lock and write the whole line in a single call, so a record is
either fully present or absent; a partial trailing line is reported as
corruption when the store is opened. Re-appending a session is a no-op that
returns the already-stored record id.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Literal


class PersistenceError(Exception):
    """The store could not be read or written."""


class StoreCorruptError(PersistenceError):
    """A stored line is not a valid record document."""

    def __init__(self, line_number: int, reason: str) -> None:
        super().__init__(f"corrupt store at line {line_number}: {reason}")
        self.line_number = line_number


class RecordValidationError(ValueError):
    def __init__(self, errors: list[str]) -> None:
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class ResponseRecord:
    record_id: str
    session_id: str
    version: int
    gender: str
    age: int | None
    education: str
    answers: tuple[int, ...]
    response_times_ms: tuple[int | None, ...]
    created_at: datetime

    def to_json(self) -> dict[str, Any]:
        return {
            "record_id": self.record_id,
            "session_id": self.session_id,
            "version": self.version,
            "gender": self.gender,
            "age": self.age,
            "education": self.education,
            "answers": list(self.answers),
            "response_times_ms": list(self.response_times_ms),
            "created_at": self.created_at.astimezone(timezone.utc).isoformat(),
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "ResponseRecord":
        return cls(
            record_id=doc["record_id"],
            session_id=doc["session_id"],
            version=doc["version"],
            gender=doc["gender"],
            age=doc["age"],
            education=doc["education"],
            answers=tuple(doc["answers"]),
            response_times_ms=tuple(doc["response_times_ms"]),
            created_at=datetime.fromisoformat(doc["created_at"]),
        )


def validate_record(r: ResponseRecord) -> list[str]:
    """Structured list of schema violations; empty means the record is valid."""
    errors: list[str] = []
    if not r.record_id:
        errors.append("record_id must be non-empty")
    if not r.session_id:
        errors.append("session_id must be non-empty")
    if r.version not in (1, 2):
        errors.append(f"version must be 1 or 2, got {r.version!r}")
    if len(r.answers) != 7:
        errors.append(f"answers must have exactly 7 entries, got {len(r.answers)}")
    for i, a in enumerate(r.answers):
        if a == 0:
            errors.append(f"unanswered slot at position {i + 1}")
        elif a not in (1, 2):
            errors.append(f"answer at position {i + 1} must be 1 or 2, got {a!r}")
    if len(r.response_times_ms) != 7:
        errors.append(f"response_times_ms must have exactly 7 entries, got {len(r.response_times_ms)}")
    else:
        for i, t in enumerate(r.response_times_ms):
            if t is not None and (not isinstance(t, int) or t < 0):
                errors.append(f"response time at position {i + 1} must be a natural number or null")
    if r.age is not None and not 0 <= r.age <= 130:
        errors.append(f"age must be in [0, 130], got {r.age!r}")
    return errors


def _encode_line(r: ResponseRecord) -> bytes:
    return (json.dumps(r.to_json(), ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")


class RecordStore:
    """Handle on one store file; index of persisted session ids kept in memory.

    One writer at a time per file (advisory lock plus an in-process mutex);
    concurrent readers are safe because lines are only ever appended.
    """

    def __init__(self, path: str | os.PathLike[str]) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index: dict[str, str] = {}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if not self.path.exists():
            self.path.touch()
        for record in self._scan():
            self._index[record.session_id] = record.record_id

    @classmethod
    def open(cls, path: str | os.PathLike[str]) -> "RecordStore":
        return cls(path)

    def _scan(self) -> Iterable[ResponseRecord]:
        try:
            data = self.path.read_bytes()
        except OSError as exc:
            raise PersistenceError(f"cannot read store {self.path}: {exc}") from exc
        if not data:
            return
        lines = data.split(b"\n")
        trailing = lines.pop()
        if trailing:
            raise StoreCorruptError(len(lines) + 1, "partial trailing line (no newline terminator)")
        for number, line in enumerate(lines, start=1):
            try:
                doc = json.loads(line.decode("utf-8"))
                record = ResponseRecord.from_json(doc)
            except (ValueError, KeyError, TypeError) as exc:
                raise StoreCorruptError(number, f"undecodable record ({exc})") from exc
            problems = validate_record(record)
            if problems:
                raise StoreCorruptError(number, problems[0])
            yield record

    def append(self, r: ResponseRecord) -> str:
        """Durably append once; duplicate session ids return the stored id unchanged."""
        problems = validate_record(r)
        if problems:
            raise RecordValidationError(problems)
        with self._lock:
            existing = self._index.get(r.session_id)
            if existing is not None:
                return existing
            line = _encode_line(r)
            try:
                fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
                try:
                    fcntl.flock(fd, fcntl.LOCK_EX)
                    os.write(fd, line)
                    os.fsync(fd)
                finally:
                    fcntl.flock(fd, fcntl.LOCK_UN)
                    os.close(fd)
            except OSError as exc:
                raise PersistenceError(f"cannot append to store {self.path}: {exc}") from exc
            self._index[r.session_id] = r.record_id
            return r.record_id

    def __contains__(self, session_id: str) -> bool:
        return session_id in self._index

    def __len__(self) -> int:
        return len(self._index)

    def load(self, version: int | Literal["all"] = "all") -> list[ResponseRecord]:
        """Records in append order, optionally filtered to one version."""
        if version not in (1, 2, "all"):
            raise ValueError(f"version must be 1, 2 or 'all', got {version!r}")
        records = list(self._scan())
        if version == "all":
            return records
        return [r for r in records if r.version == version]


def document_id(session_id: str) -> str:
    """Deterministic 24-hex-char document id, shaped like an object id."""
    return hashlib.sha256(session_id.encode("utf-8")).hexdigest()[:24]


def to_document(r: ResponseRecord) -> dict[str, Any]:
    """One export document: _id, gender, age, education, answers, in that order.

    An absent age is omitted rather than nulled; response times never appear
    in this schema.
    """
    doc: dict[str, Any] = {"_id": document_id(r.session_id), "gender": r.gender}
    if r.age is not None:
        doc["age"] = r.age
    doc["education"] = r.education
    doc["answers"] = list(r.answers)
    return doc


def export_documents(records: Iterable[ResponseRecord]) -> tuple[str, str]:
    """Two document streams (version 1, version 2), one compact JSON doc per line.

    Byte-stable: the same records always serialize identically.
    """
    streams = {1: [], 2: []}
    for r in records:
        streams[r.version].append(json.dumps(to_document(r), ensure_ascii=False, separators=(",", ":")))
    return (
        "".join(line + "\n" for line in streams[1]),
        "".join(line + "\n" for line in streams[2]),
    )


def export_to_dir(records: Iterable[ResponseRecord], directory: str | os.PathLike[str]) -> tuple[Path, Path]:
    """Write answers_v1.jsonl and answers_v2.jsonl under the given directory."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    v1, v2 = export_documents(records)
    p1, p2 = out / "answers_v1.jsonl", out / "answers_v2.jsonl"
    p1.write_text(v1, encoding="utf-8")
    p2.write_text(v2, encoding="utf-8")
    return p1, p2
