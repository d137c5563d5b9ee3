"""HTTP service exposing the session lifecycle to the browser client.

One process hosts both questionnaire versions: sessions are assigned versions
alternately (1, 2, 1, 2, ...), so any even number of respondents splits evenly.
Live sessions are held in memory; the durable artifact is the record store.
If the store cannot be opened at startup, session creation is denied with 503.

Run with: framequest-service --store records.jsonl --listen 127.0.0.1:8000
(or environment variables FRAMEQUEST_STORE / FRAMEQUEST_LISTEN / FRAMEQUEST_STATIC).
"""

from __future__ import annotations

import argparse
import os
import threading

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import session as engine
from .analysis import build_report
from .bank import frame_for, render
from .decisions import ValidationError
from .session import (
    AlreadyAnsweredError,
    Demographics,
    LockedTaskError,
    SessionState,
)
from .store import PersistenceError, RecordStore


class CreateSessionBody(BaseModel):
    gender: str = ""
    age: int | None = None
    education: str = ""


class AnswerBody(BaseModel):
    choice: int
    response_time_ms: int | None = None


class SessionRegistry:
    """Live sessions plus the alternating version counter.

    Operations on one session are serialized by its own lock; distinct
    sessions proceed concurrently. Store appends are already serialized by
    the store itself.
    """

    def __init__(self, store: RecordStore | None, store_error: str | None = None) -> None:
        self.store = store
        self.store_error = store_error
        self._sessions: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._assignment_counter = 0

    def create(self, demographics: Demographics) -> SessionState:
        with self._registry_lock:
            version = 1 + self._assignment_counter % 2
            self._assignment_counter += 1
            state = engine.start_session(demographics, version)
            self._sessions[state.session_id] = state
            self._locks[state.session_id] = threading.Lock()
            return state

    def lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            lock = self._locks.get(session_id)
        if lock is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return lock

    def get(self, session_id: str) -> SessionState:
        with self._registry_lock:
            state = self._sessions.get(session_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return state

    def put(self, state: SessionState) -> None:
        with self._registry_lock:
            self._sessions[state.session_id] = state


def _state_json(s: SessionState) -> dict:
    return {
        "session_id": s.session_id,
        "version": s.version,
        "health": s.player.health,
        "health_display": s.player.health_display,
        "gold_display": s.player.gold_display,
        "bonus_display": s.player.bonus_display,
        "solved": list(s.solved),
        "gate_open": s.gate_open,
        "finalized": s.finalized,
    }


def _finalize(registry: SessionRegistry, state: SessionState) -> SessionState:
    """Persist the completed session's record and flag it; idempotent.

    The store deduplicates on session id, so a retried finalization can never
    write a second record. Call with the session lock held.
    """
    if not engine.is_complete(state) or state.finalized:
        return state
    if registry.store is None:
        raise HTTPException(status_code=503, detail=registry.store_error or "record store unavailable")
    try:
        registry.store.append(engine.to_record(state))
    except PersistenceError as exc:
        raise HTTPException(status_code=500, detail=f"record not persisted, retry the call: {exc}") from exc
    state = engine.mark_finalized(state)
    registry.put(state)
    return state


def create_app(store_path: str | os.PathLike[str], static_dir: str | None = None) -> FastAPI:
    try:
        store: RecordStore | None = RecordStore.open(store_path)
        store_error = None
    except PersistenceError as exc:
        store, store_error = None, str(exc)
    registry = SessionRegistry(store, store_error)

    app = FastAPI(title="framequest experiment service")
    app.state.registry = registry

    @app.post("/api/v1/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        if registry.store is None:
            raise HTTPException(status_code=503, detail=registry.store_error or "record store unavailable")
        try:
            demographics = Demographics(gender=body.gender, age=body.age, education=body.education)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        state = registry.create(demographics)
        return {"session_id": state.session_id, "version": state.version, "state": _state_json(state)}

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        state = registry.get(session_id)
        return {
            "state": _state_json(state),
            "available_tasks": sorted(engine.available_tasks(state)),
        }

    @app.get("/api/v1/sessions/{session_id}/questions/{n}")
    def get_question_script(session_id: str, n: int) -> dict:
        state = registry.get(session_id)
        if n not in range(1, 8):
            raise HTTPException(status_code=404, detail=f"no question {n}")
        if state.solved[n - 1]:
            raise HTTPException(status_code=409, detail=f"question {n} was already answered")
        if n not in engine.available_tasks(state):
            raise HTTPException(status_code=423, detail=f"question {n} is locked")
        script = render(n, frame_for(state.version, n))
        return {
            "npc_name": script.npc_name,
            "question": script.question,
            "answer_one": script.answer_one,
            "answer_two": script.answer_two,
            "continuation": script.continuation,
        }

    @app.post("/api/v1/sessions/{session_id}/questions/{n}/answer")
    def post_answer(session_id: str, n: int, body: AnswerBody) -> dict:
        lock = registry.lock_for(session_id)
        with lock:
            state = registry.get(session_id)
            if n not in range(1, 8):
                raise HTTPException(status_code=404, detail=f"no question {n}")
            # a completed-but-unpersisted session (earlier store failure)
            # finalizes here before anything else
            state = _finalize(registry, state)
            try:
                state, bundle, continuation = engine.submit_answer(state, n, body.choice, body.response_time_ms)
            except AlreadyAnsweredError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except LockedTaskError as exc:
                raise HTTPException(status_code=423, detail=str(exc)) from exc
            except ValidationError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            registry.put(state)
            state = _finalize(registry, state)
            return {
                "continuation": continuation,
                "effects": bundle.to_json(),
                "state": _state_json(state),
            }

    @app.get("/api/v1/analysis/summary")
    def analysis_summary() -> dict:
        if registry.store is None:
            raise HTTPException(status_code=503, detail=registry.store_error or "record store unavailable")
        try:
            records = registry.store.load()
        except PersistenceError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        v1 = [r for r in records if r.version == 1]
        v2 = [r for r in records if r.version == 2]
        return build_report(v1, v2)

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="framequest-service", description=__doc__)
    parser.add_argument("--store", default=os.environ.get("FRAMEQUEST_STORE", "records.jsonl"))
    parser.add_argument("--listen", default=os.environ.get("FRAMEQUEST_LISTEN", "127.0.0.1:8000"))
    parser.add_argument("--static-dir", default=os.environ.get("FRAMEQUEST_STATIC"))
    args = parser.parse_args(argv)

    host, _, port = args.listen.rpartition(":")
    app = create_app(args.store, static_dir=args.static_dir)

    import uvicorn

    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
