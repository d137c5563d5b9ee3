"""In-game consequences attached to each task.

Every task applies one fixed consequence bundle no matter which answer was
picked: the two answers of a task are numerically equivalent by design, so the
game resolves them identically. Bundles are static data; the session engine
applies them to player state.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any


class EffectKind(str, Enum):
    HEALTH_SET = "health_set"
    GOLD_DELTA = "gold_delta"
    GATE_OPEN = "gate_open"
    BONUS_DISPLAY = "bonus_display"
    UNLOCK_TASKS = "unlock_tasks"
    BLACKOUT_RELOCATE = "blackout_relocate"


@dataclass(frozen=True)
class Effect:
    """One state change or UI event.

    Payload fields by kind:
      health_set        health (target value), display ("X/250"); allow_decrease
                        False makes the write a heal that never lowers health
      gold_delta        amount_deci (signed tenths of a coin)
      gate_open         none
      bonus_display     text
      unlock_tasks      tasks (ids made available)
      blackout_relocate destination tag
    """

    kind: EffectKind
    health: int | None = None
    display: str | None = None
    allow_decrease: bool = True
    amount_deci: int | None = None
    text: str | None = None
    tasks: tuple[int, ...] = ()
    destination: str | None = None

    def __post_init__(self) -> None:
        required = {
            EffectKind.HEALTH_SET: ("health", "display"),
            EffectKind.GOLD_DELTA: ("amount_deci",),
            EffectKind.GATE_OPEN: (),
            EffectKind.BONUS_DISPLAY: ("text",),
            EffectKind.UNLOCK_TASKS: ("tasks",),
            EffectKind.BLACKOUT_RELOCATE: ("destination",),
        }[self.kind]
        for name in required:
            value = getattr(self, name)
            if value is None or value == ():
                raise ValueError(f"{self.kind.value} effect needs {name}")

    def to_json(self) -> dict[str, Any]:
        payload_fields = {
            EffectKind.HEALTH_SET: ("health", "display"),
            EffectKind.GOLD_DELTA: ("amount_deci",),
            EffectKind.GATE_OPEN: (),
            EffectKind.BONUS_DISPLAY: ("text",),
            EffectKind.UNLOCK_TASKS: ("tasks",),
            EffectKind.BLACKOUT_RELOCATE: ("destination",),
        }[self.kind]
        doc: dict[str, Any] = {"kind": self.kind.value}
        for name in payload_fields:
            value = getattr(self, name)
            doc[name] = list(value) if isinstance(value, tuple) else value
        return doc


@dataclass(frozen=True)
class ConsequenceBundle:
    """Ordered effects plus the alert text shown for three seconds."""

    effects: tuple[Effect, ...]
    alert_text: str

    def __post_init__(self) -> None:
        if not self.alert_text:
            raise ValueError("alert_text must be non-empty")

    def to_json(self) -> dict[str, Any]:
        return {"alert_text": self.alert_text, "effects": [e.to_json() for e in self.effects]}


def _health(value: int, display: str, allow_decrease: bool = True) -> Effect:
    return Effect(EffectKind.HEALTH_SET, health=value, display=display, allow_decrease=allow_decrease)


# Keyed by the consequence ids used in the question bank file. Alert strings for
# tasks 1-6 are the exact in-game notification texts; task 7 resolves the story
# without touching player state. Task 1's heal never lowers health, so answering
# it late in a run cannot undo the full heal from task 6.
CONSEQUENCES: dict[str, ConsequenceBundle] = {
    "salesman_potion": ConsequenceBundle(
        effects=(_health(150, "150/250", allow_decrease=False),),
        alert_text="150 health points gained!",
    ),
    "gate_toll": ConsequenceBundle(
        effects=(
            Effect(EffectKind.GOLD_DELTA, amount_deci=-30),
            Effect(EffectKind.GATE_OPEN),
        ),
        alert_text="3 gold coins lost!",
    ),
    "fur_sale": ConsequenceBundle(
        effects=(Effect(EffectKind.GOLD_DELTA, amount_deci=35),),
        alert_text="3.5 gold coins gained!",
    ),
    "auction_bonus": ConsequenceBundle(
        effects=(Effect(EffectKind.BONUS_DISPLAY, text="+20"),),
        alert_text="You've won the dagger!",
    ),
    "bandit_ambush": ConsequenceBundle(
        effects=(
            Effect(EffectKind.UNLOCK_TASKS, tasks=(6, 7)),
            Effect(EffectKind.BLACKOUT_RELOCATE, destination="clinic"),
            _health(30, "30/250"),
        ),
        alert_text="You've been injured!",
    ),
    "full_heal": ConsequenceBundle(
        effects=(_health(250, "250/250"),),
        alert_text="Healing steadily!",
    ),
    "attack_plan": ConsequenceBundle(
        effects=(),
        alert_text="The attack plan is underway!",
    ),
    "demo_noop": ConsequenceBundle(
        effects=(),
        alert_text="Demo question, nothing happens.",
    ),
}
