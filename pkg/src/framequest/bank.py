"""The seven-task question bank.

Loads the embedded data file once, validates its structural invariants, and
exposes the framed dialogue scripts, the per-version framing plan, deep
structures, and bank-wide validation. The stimulus texts are experimental
material: a checksum of the canonical serialization is pinned in the test
suite so that any edit is deliberate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Any

from .consequences import CONSEQUENCES, ConsequenceBundle
from .decisions import Domain, Prospect, ValidationError, expected_value_exact

QUESTION_IDS = range(1, 8)


class QuestionNotFoundError(LookupError):
    """No bank entry with the requested id."""


class FrameLabel(str, Enum):
    P = "P"
    N = "N"

    @property
    def inverse(self) -> "FrameLabel":
        return FrameLabel.N if self is FrameLabel.P else FrameLabel.P


@dataclass(frozen=True)
class DialogueScript:
    """One task's surface rendering: question, the two answers, continuation."""

    npc_name: str
    question: str
    answer_one: str
    answer_two: str
    continuation: str

    def __post_init__(self) -> None:
        for name in ("npc_name", "question", "answer_one", "answer_two", "continuation"):
            if not getattr(self, name):
                raise ValidationError(f"dialogue script field {name} must be non-empty")


@dataclass(frozen=True)
class DeepStructure:
    """The numeric content of a task: its certain and risky prospects.

    quantified is False when the stimulus text leaves payoffs unstated; such
    entries carry placeholder values and make no expected-value claim.
    """

    certain: Prospect
    risky: Prospect
    domain: Domain
    quantified: bool

    def __post_init__(self) -> None:
        if not self.certain.is_certain:
            raise ValidationError("certain prospect must have exactly one outcome with probability 1")
        if len(self.risky.outcomes) < 2:
            raise ValidationError("risky prospect must have at least two outcomes")
        if self.quantified and expected_value_exact(self.certain) != expected_value_exact(self.risky):
            raise ValidationError("quantified deep structure with unequal expected values")


@dataclass(frozen=True)
class FramedQuestion:
    id: int
    deep: DeepStructure
    positive: DialogueScript
    negative: DialogueScript
    consequence: ConsequenceBundle
    consequence_id: str
    labels_positive: tuple[str, ...]
    labels_negative: tuple[str, ...]

    def script(self, frame: FrameLabel) -> DialogueScript:
        return self.positive if frame is FrameLabel.P else self.negative


@dataclass(frozen=True)
class VersionPlan:
    version: int
    frames: tuple[FrameLabel, ...]


@dataclass(frozen=True)
class BankCheck:
    """One validate_bank row; ev_equal is None for non-quantified entries."""

    id: int
    quantified: bool
    ev_equal: bool | None


def _load_raw() -> dict[str, Any]:
    text = resources.files("framequest.data").joinpath("questions.json").read_text("utf-8")
    return json.loads(text)


def _parse_question(raw: dict[str, Any]) -> FramedQuestion:
    domain = Domain(raw["domain"])
    deep = DeepStructure(
        certain=Prospect([(v, p) for v, p in raw["certain"]], domain),
        risky=Prospect([(v, p) for v, p in raw["risky"]], domain),
        domain=domain,
        quantified=raw["quantified"],
    )
    if not raw["certain_first"]:
        raise ValidationError(f"question {raw['id']}: answer_one must render the certain option")
    scripts = {}
    for frame in ("positive", "negative"):
        s = raw[frame]
        scripts[frame] = DialogueScript(
            npc_name=raw["npc_name"],
            question=s["question"],
            answer_one=s["answer_one"],
            answer_two=s["answer_two"],
            continuation=s["continuation"],
        )
    return FramedQuestion(
        id=raw["id"],
        deep=deep,
        positive=scripts["positive"],
        negative=scripts["negative"],
        consequence=CONSEQUENCES[raw["consequence"]],
        consequence_id=raw["consequence"],
        labels_positive=tuple(raw["labels_positive"]),
        labels_negative=tuple(raw["labels_negative"]),
    )


class Bank:
    def __init__(self, raw: dict[str, Any]) -> None:
        self.raw = raw
        self.questions = {q["id"]: _parse_question(q) for q in raw["questions"]}
        if sorted(self.questions) != list(QUESTION_IDS):
            raise ValidationError("bank must contain exactly questions 1..7")
        self.plans = {
            int(v): VersionPlan(int(v), tuple(FrameLabel(f) for f in frames))
            for v, frames in raw["version_plans"].items()
        }
        if sorted(self.plans) != [1, 2]:
            raise ValidationError("bank must define version plans 1 and 2")
        for i in range(7):
            if self.plans[1].frames[i] is not self.plans[2].frames[i].inverse:
                raise ValidationError(f"version plans must be inverses, question {i + 1} is not")
        self.demo = _parse_question(raw["endowment_demo"])


_BANK: Bank | None = None


def _bank() -> Bank:
    global _BANK
    if _BANK is None:
        _BANK = Bank(_load_raw())
    return _BANK


def get_question(id: int) -> FramedQuestion:
    """Bank entry for a task id in 1..7."""
    try:
        return _bank().questions[id]
    except (KeyError, TypeError):
        raise QuestionNotFoundError(f"no question with id {id!r}") from None


def all_questions() -> list[FramedQuestion]:
    return [get_question(i) for i in QUESTION_IDS]


def frame_for(version: int, id: int) -> FrameLabel:
    """Which frame a task shows in a given game version."""
    if version not in (1, 2):
        raise ValidationError(f"version must be 1 or 2, got {version!r}")
    if id not in QUESTION_IDS:
        raise QuestionNotFoundError(f"no question with id {id!r}")
    return _bank().plans[version].frames[id - 1]


def version_plan(version: int) -> VersionPlan:
    if version not in (1, 2):
        raise ValidationError(f"version must be 1 or 2, got {version!r}")
    return _bank().plans[version]


def render(id: int, frame: FrameLabel) -> DialogueScript:
    """The verbatim script for a task in one frame."""
    return get_question(id).script(FrameLabel(frame))


def validate_bank() -> list[BankCheck]:
    """Expected-value check per entry: exact equality where quantified."""
    checks = []
    for q in all_questions():
        if q.deep.quantified:
            equal = expected_value_exact(q.deep.certain) == expected_value_exact(q.deep.risky)
            checks.append(BankCheck(q.id, True, equal))
        else:
            checks.append(BankCheck(q.id, False, None))
    return checks


def table1_fixture() -> FramedQuestion:
    """The $500-endowment demo question, for docs and tests; not one of the 7 tasks."""
    return _bank().demo


def canonical_serialization() -> bytes:
    """Key-sorted compact JSON of the bank data, stable under formatting edits."""
    return json.dumps(_bank().raw, sort_keys=True, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def bank_checksum() -> str:
    return hashlib.sha256(canonical_serialization()).hexdigest()
