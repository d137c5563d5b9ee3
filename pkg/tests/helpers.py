"""Shared test fixtures: record factory and the independent export-schema
validator.

The validator was written against the target document schema before the
exporter existed and must stay ignorant of the exporter's internals.
"""

import json
import re
from datetime import datetime, timezone

from framequest.store import ResponseRecord

_ID_RE = re.compile(r"^[0-9a-f]{24}$")

NOW = datetime(2024, 5, 3, 12, 0, 0, tzinfo=timezone.utc)


def assert_conforms_to_document_schema(line: str) -> None:
    """One exported line must be a document of exactly the fields
    _id, gender, age, education, answers in that order, age optional,
    answers an array of seven integers valued 1 or 2."""
    doc = json.loads(line)
    keys = list(doc.keys())
    assert keys in (
        ["_id", "gender", "age", "education", "answers"],
        ["_id", "gender", "education", "answers"],
    ), f"unexpected field set/order: {keys}"
    assert _ID_RE.match(doc["_id"]), f"_id not a 24-hex-char string: {doc['_id']!r}"
    assert isinstance(doc["gender"], str)
    assert isinstance(doc["education"], str)
    if "age" in doc:
        assert isinstance(doc["age"], int) and not isinstance(doc["age"], bool)
    assert isinstance(doc["answers"], list) and len(doc["answers"]) == 7
    assert all(isinstance(a, int) and a in (1, 2) for a in doc["answers"])
    assert "response_times_ms" not in doc
    assert "version" not in doc


def make_record(i=0, version=1, **overrides):
    fields = dict(
        record_id=f"rec-{i}",
        session_id=f"sess-{i}",
        version=version,
        gender="",
        age=None,
        education="",
        answers=(1, 2, 1, 2, 1, 2, 1),
        response_times_ms=(None,) * 7,
        created_at=NOW,
    )
    fields.update(overrides)
    return ResponseRecord(**fields)
