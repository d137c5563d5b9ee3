"""HTTP service contract: counterbalanced assignment, question delivery,
answer flow with automatic finalization, and the summary endpoint."""

import pytest
from fastapi.testclient import TestClient

from framequest.service import create_app
from framequest.store import PersistenceError, RecordStore


@pytest.fixture()
def store_path(tmp_path):
    return tmp_path / "records.jsonl"


@pytest.fixture()
def client(store_path):
    return TestClient(create_app(store_path))


def new_session(client, body=None):
    response = client.post("/api/v1/sessions", json=body or {})
    assert response.status_code == 200, response.text
    return response.json()


def answer(client, session_id, n, choice=1, rt=None):
    body = {"choice": choice}
    if rt is not None:
        body["response_time_ms"] = rt
    return client.post(f"/api/v1/sessions/{session_id}/questions/{n}/answer", json=body)


def complete_session(client, session_id):
    for n in (1, 2, 3, 4, 5, 6, 7):
        response = answer(client, session_id, n)
        assert response.status_code == 200, response.text
    return response


class TestSessionCreation:
    def test_versions_alternate(self, client):
        versions = [new_session(client)["version"] for _ in range(6)]
        assert versions == [1, 2, 1, 2, 1, 2]

    def test_counterbalanced_after_2k_sessions(self, client):
        versions = [new_session(client)["version"] for _ in range(20)]
        assert versions.count(1) == versions.count(2) == 10

    def test_empty_body_gives_empty_demographics(self, client):
        doc = new_session(client, {})
        assert doc["state"]["health_display"] == "1/250"
        assert doc["state"]["gold_display"] == "12"

    def test_negative_age_rejected(self, client):
        response = client.post("/api/v1/sessions", json={"age": -1})
        assert response.status_code == 400

    def test_demographics_accepted(self, client):
        doc = new_session(client, {"gender": "female", "age": 28, "education": "college"})
        assert doc["session_id"]

    def test_store_unavailable_denies_play(self, tmp_path):
        (tmp_path / "not-a-file").mkdir()
        app = create_app(tmp_path / "not-a-file")
        response = TestClient(app).post("/api/v1/sessions", json={})
        assert response.status_code == 503


class TestSessionView:
    def test_fresh_session_projection(self, client):
        sid = new_session(client)["session_id"]
        doc = client.get(f"/api/v1/sessions/{sid}").json()
        assert doc["available_tasks"] == [1, 2]
        assert doc["state"]["health_display"] == "1/250"
        assert doc["state"]["gate_open"] is False

    def test_gate_opens_after_second_task(self, client):
        sid = new_session(client)["session_id"]
        answer(client, sid, 2)
        doc = client.get(f"/api/v1/sessions/{sid}").json()
        assert doc["state"]["gate_open"] is True
        assert doc["available_tasks"] == [1, 3, 4, 5]

    def test_unknown_session_404(self, client):
        assert client.get("/api/v1/sessions/nope").status_code == 404


class TestQuestionDelivery:
    def test_v1_first_question_is_positive(self, client):
        sid = new_session(client)["session_id"]  # first session gets version 1
        doc = client.get(f"/api/v1/sessions/{sid}/questions/1").json()
        assert "Potion A will recover 150" in doc["answer_one"]
        assert doc["npc_name"] == "Travelling Salesman"

    def test_v2_first_question_is_negative(self, client):
        new_session(client)
        sid = new_session(client)["session_id"]  # second session gets version 2
        doc = client.get(f"/api/v1/sessions/{sid}/questions/1").json()
        assert "damaged health points" in doc["answer_one"]

    def test_locked_question_423(self, client):
        sid = new_session(client)["session_id"]
        assert client.get(f"/api/v1/sessions/{sid}/questions/6").status_code == 423

    def test_answered_question_409(self, client):
        sid = new_session(client)["session_id"]
        answer(client, sid, 1)
        assert client.get(f"/api/v1/sessions/{sid}/questions/1").status_code == 409

    def test_unknown_question_404(self, client):
        sid = new_session(client)["session_id"]
        assert client.get(f"/api/v1/sessions/{sid}/questions/9").status_code == 404


class TestAnswerFlow:
    def test_first_answer_effects(self, client):
        sid = new_session(client)["session_id"]
        doc = answer(client, sid, 1).json()
        assert doc["effects"]["alert_text"] == "150 health points gained!"
        assert {"kind": "health_set", "health": 150, "display": "150/250"} in doc["effects"]["effects"]
        assert doc["state"]["health"] == 150
        assert doc["continuation"]

    def test_bad_choice_400(self, client):
        sid = new_session(client)["session_id"]
        assert answer(client, sid, 1, choice=3).status_code == 400

    def test_locked_answer_423(self, client):
        sid = new_session(client)["session_id"]
        assert answer(client, sid, 6).status_code == 423

    def test_double_answer_409(self, client):
        sid = new_session(client)["session_id"]
        answer(client, sid, 1)
        assert answer(client, sid, 1).status_code == 409

    def test_response_time_recorded(self, client, store_path):
        sid = new_session(client)["session_id"]
        for n in range(1, 8):
            assert answer(client, sid, n, rt=n * 100).status_code == 200
        record = RecordStore.open(store_path).load()[0]
        assert record.response_times_ms == tuple(n * 100 for n in range(1, 8))

    def test_seventh_answer_finalizes_and_persists_once(self, client, store_path):
        sid = new_session(client)["session_id"]
        final = complete_session(client, sid).json()
        assert final["state"]["finalized"] is True
        store = RecordStore.open(store_path)
        assert len(store) == 1
        assert store.load()[0].session_id == sid

    def test_repeating_seventh_answer_is_409_without_second_record(self, client, store_path):
        sid = new_session(client)["session_id"]
        complete_session(client, sid)
        assert answer(client, sid, 7).status_code == 409
        assert len(RecordStore.open(store_path)) == 1

    def test_persistence_failure_then_retry(self, client, store_path, monkeypatch):
        sid = new_session(client)["session_id"]
        for n in range(1, 7):
            answer(client, sid, n)
        registry = client.app.state.registry
        real_append = registry.store.append
        calls = {"n": 0}

        def flaky_append(record):
            calls["n"] += 1
            if calls["n"] == 1:
                raise PersistenceError("disk on fire")
            return real_append(record)

        monkeypatch.setattr(registry.store, "append", flaky_append)
        failed = answer(client, sid, 7)
        assert failed.status_code == 500
        # the answer was recorded; retrying persists exactly one record
        retry = answer(client, sid, 7)
        assert retry.status_code == 409
        assert client.get(f"/api/v1/sessions/{sid}").json()["state"]["finalized"] is True
        assert len(RecordStore.open(store_path)) == 1


class TestSummary:
    def test_empty_store_summary(self, client):
        doc = client.get("/api/v1/analysis/summary").json()
        assert doc["counts"]["total"] == 0
        assert doc["reflection"] is None
        assert all("p_value" not in q for q in doc["questions"])

    def test_summary_after_sessions(self, client):
        for _ in range(4):
            sid = new_session(client)["session_id"]
            complete_session(client, sid)
        doc = client.get("/api/v1/analysis/summary").json()
        assert doc["counts"] == {"version_1": 2, "version_2": 2, "total": 4}
        assert len(doc["questions"]) == 7

    def test_corrupt_store_500_with_line_diagnostic(self, client, store_path):
        sid = new_session(client)["session_id"]
        complete_session(client, sid)
        with store_path.open("a", encoding="utf-8") as fh:
            fh.write("not a record\n")
        response = client.get("/api/v1/analysis/summary")
        assert response.status_code == 500
        assert "line 2" in response.json()["detail"]


class TestStatelessness:
    def test_restart_preserves_records_loses_sessions(self, store_path):
        first = TestClient(create_app(store_path))
        done = new_session(first)["session_id"]
        complete_session(first, done)
        half = new_session(first)["session_id"]
        answer(first, half, 1)

        restarted = TestClient(create_app(store_path))
        # stored record survives and is not duplicated
        assert restarted.get("/api/v1/analysis/summary").json()["counts"]["total"] == 1
        # live sessions are gone
        assert restarted.get(f"/api/v1/sessions/{half}").status_code == 404
        assert restarted.get(f"/api/v1/sessions/{done}").status_code == 404
