"""Deterministic state machine for one respondent's run through the seven tasks.

States are immutable; every operation returns a fresh state, so a failed or
rejected submission can never leave a half-applied session behind. Gating: the
two roadside tasks (1, 2) are open from the start, answering task 2 opens the
town gate (3, 4, 5), and answering task 5 unlocks the clinic and the mayor
(6, 7). Task 1 stays available until answered regardless of progress.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from .bank import frame_for, get_question
from .consequences import ConsequenceBundle, Effect, EffectKind
from .decisions import ValidationError
from .store import ResponseRecord

HEALTH_MAX = 250
START_HEALTH = 1
START_GOLD_DECI = 120


class SessionError(Exception):
    pass


class LockedTaskError(SessionError):
    """The task exists but its giver is not reachable yet."""


class AlreadyAnsweredError(SessionError):
    """Each task takes exactly one answer."""


class IncompleteSessionError(SessionError):
    """The session still has unanswered tasks."""


@dataclass(frozen=True)
class Demographics:
    gender: str = ""
    age: int | None = None
    education: str = ""

    def __post_init__(self) -> None:
        if self.age is not None and not 0 <= self.age <= 130:
            raise ValidationError(f"age must be in [0, 130], got {self.age}")


@dataclass(frozen=True)
class PlayerState:
    health: int
    gold_deci: int
    bonus_display: str | None = None

    @property
    def health_display(self) -> str:
        return f"{self.health}/{HEALTH_MAX}"

    @property
    def gold_display(self) -> str:
        whole, tenth = divmod(self.gold_deci, 10)
        return str(whole) if tenth == 0 else f"{whole}.{tenth}"


@dataclass(frozen=True)
class SessionState:
    session_id: str
    version: int
    demographics: Demographics
    player: PlayerState
    solved: tuple[bool, ...]
    answers: tuple[int, ...]
    response_times_ms: tuple[int | None, ...]
    finalized: bool
    gate_open: bool


def start_session(demographics: Demographics, version: int, session_id: str | None = None) -> SessionState:
    """Fresh run: 1 health point, 12 gold coins, nothing answered."""
    if version not in (1, 2):
        raise ValidationError(f"version must be 1 or 2, got {version!r}")
    return SessionState(
        session_id=session_id if session_id is not None else uuid.uuid4().hex,
        version=version,
        demographics=demographics,
        player=PlayerState(health=START_HEALTH, gold_deci=START_GOLD_DECI),
        solved=(False,) * 7,
        answers=(0,) * 7,
        response_times_ms=(None,) * 7,
        finalized=False,
        gate_open=False,
    )


def available_tasks(s: SessionState) -> frozenset[int]:
    """Unsolved tasks whose giver is currently reachable."""
    open_ids = {1, 2}
    if s.solved[1]:
        open_ids |= {3, 4, 5}
    if s.solved[4]:
        open_ids |= {6, 7}
    return frozenset(i for i in open_ids if not s.solved[i - 1])


def _apply_effect(s: SessionState, effect: Effect) -> SessionState:
    player = s.player
    if effect.kind is EffectKind.HEALTH_SET:
        new_health = effect.health
        if not effect.allow_decrease:
            new_health = max(new_health, player.health)
        return replace(s, player=replace(player, health=new_health))
    if effect.kind is EffectKind.GOLD_DELTA:
        return replace(s, player=replace(player, gold_deci=player.gold_deci + effect.amount_deci))
    if effect.kind is EffectKind.GATE_OPEN:
        return replace(s, gate_open=True)
    if effect.kind is EffectKind.BONUS_DISPLAY:
        return replace(s, player=replace(player, bonus_display=effect.text))
    # unlock_tasks and blackout_relocate are events for the UI; availability
    # itself derives from the solved flags.
    return s


def submit_answer(
    s: SessionState, id: int, choice: int, rt_ms: int | None = None
) -> tuple[SessionState, ConsequenceBundle, str]:
    """Record one answer, apply the task's fixed consequence, hand back the
    continuation line for the session's frame.

    The consequence does not depend on which answer was picked: the two
    options of a task are equivalent by construction, so the game resolves
    them the same way.
    """
    if id not in range(1, 8):
        raise ValidationError(f"task id must be in 1..7, got {id!r}")
    if isinstance(choice, bool) or choice not in (1, 2):
        raise ValidationError(f"choice must be 1 or 2, got {choice!r}")
    if rt_ms is not None and rt_ms < 0:
        raise ValidationError(f"response time must be >= 0, got {rt_ms!r}")
    if s.solved[id - 1]:
        raise AlreadyAnsweredError(f"task {id} was already answered")
    if id not in available_tasks(s):
        raise LockedTaskError(f"task {id} is locked")

    idx = id - 1
    new_state = replace(
        s,
        solved=s.solved[:idx] + (True,) + s.solved[idx + 1:],
        answers=s.answers[:idx] + (choice,) + s.answers[idx + 1:],
        response_times_ms=s.response_times_ms[:idx] + (rt_ms,) + s.response_times_ms[idx + 1:],
    )
    bundle = get_question(id).consequence
    for effect in bundle.effects:
        new_state = _apply_effect(new_state, effect)
    continuation = get_question(id).script(frame_for(s.version, id)).continuation
    return new_state, bundle, continuation


def is_complete(s: SessionState) -> bool:
    return all(s.solved)


def mark_finalized(s: SessionState) -> SessionState:
    if not is_complete(s):
        raise IncompleteSessionError("cannot finalize with unanswered tasks")
    return replace(s, finalized=True)


def to_record(
    s: SessionState,
    record_id: str | None = None,
    created_at: datetime | None = None,
) -> ResponseRecord:
    """Project a completed session into its persistent response record."""
    if not is_complete(s):
        unanswered = [i + 1 for i, done in enumerate(s.solved) if not done]
        raise IncompleteSessionError(f"tasks {unanswered} are unanswered")
    return ResponseRecord(
        record_id=record_id if record_id is not None else uuid.uuid4().hex,
        session_id=s.session_id,
        version=s.version,
        gender=s.demographics.gender,
        age=s.demographics.age,
        education=s.demographics.education,
        answers=s.answers,
        response_times_ms=s.response_times_ms,
        created_at=created_at if created_at is not None else datetime.now(timezone.utc),
    )
