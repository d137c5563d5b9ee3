"""Choice-data analysis: risky-choice shares by frame, framing-effect tests,
reflection summary, the four-lottery demonstration, and a seeded synthetic
cohort simulator used to validate the whole pipeline end to end.

Answer 2 is the risky option everywhere; the bank guarantees the certain
option always renders first.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from . import session as engine
from .bank import FrameLabel, bank_checksum, frame_for, validate_bank
from .decisions import (
    ALLAIS_GAMBLES,
    AllaisChoice,
    Lottery,
    allais_violates_eut,
    expected_value,
)
from .session import Demographics
from .store import ResponseRecord

SIM_TIMESTAMP = datetime(1970, 1, 1, tzinfo=timezone.utc)


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class EffectReport:
    """Per-question framing comparison: risky shares by frame and their z-test."""

    question_id: int
    n_pos: int
    n_neg: int
    risky_share_pos: float
    risky_share_neg: float
    delta: float
    z_stat: float
    p_value: float


@dataclass(frozen=True)
class ReflectionReport:
    """Risky shares pooled over all negatively vs positively framed instances."""

    n_pos: int
    n_neg: int
    risky_share_pos: float
    risky_share_neg: float
    delta: float
    z_stat: float
    p_value: float
    consistent_with_reflection: bool


@dataclass(frozen=True)
class AgentPolicy:
    """Synthetic respondent: frame-conditional probability of picking risky."""

    p_risky_positive: float
    p_risky_negative: float
    seed: int

    def __post_init__(self) -> None:
        for name in ("p_risky_positive", "p_risky_negative"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise AnalysisError(f"{name} must be in [0, 1], got {p!r}")


def normal_cdf(z: float) -> float:
    """Standard normal CDF via erf; absolute accuracy well under 1e-7."""
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def two_proportion_ztest(x1: int, n1: int, x2: int, n2: int) -> tuple[float, float]:
    """Pooled two-proportion z-test, two-sided; returns (z, p).

    z is signed as (x1/n1 - x2/n2) / se. Zero pooled variance (all successes
    or all failures) degenerates to z=0, p=1.
    """
    if n1 <= 0 or n2 <= 0:
        raise AnalysisError("both samples must be non-empty")
    p1, p2 = x1 / n1, x2 / n2
    pooled = (x1 + x2) / (n1 + n2)
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    if se == 0.0:
        return 0.0, 1.0
    z = (p1 - p2) / se
    return z, 2.0 * (1.0 - normal_cdf(abs(z)))


def risky_share(records: Sequence[ResponseRecord], qid: int) -> float:
    """Fraction of records that picked the risky option (answer 2) on one task."""
    if qid not in range(1, 8):
        raise AnalysisError(f"question id must be in 1..7, got {qid!r}")
    if not records:
        raise AnalysisError(f"no records to compute risky share for question {qid}")
    return sum(1 for r in records if r.answers[qid - 1] == 2) / len(records)


def _pools(
    v1_records: Sequence[ResponseRecord], v2_records: Sequence[ResponseRecord], qid: int
) -> tuple[Sequence[ResponseRecord], Sequence[ResponseRecord]]:
    """Split records into (positive-frame pool, negative-frame pool) for one task."""
    if frame_for(1, qid) is FrameLabel.P:
        return v1_records, v2_records
    return v2_records, v1_records


def framing_effect(
    v1_records: Sequence[ResponseRecord], v2_records: Sequence[ResponseRecord], qid: int
) -> EffectReport:
    """Risky-share difference between the two frames of one question."""
    pos, neg = _pools(v1_records, v2_records, qid)
    if not pos or not neg:
        raise AnalysisError(f"question {qid}: both frame pools must be non-empty")
    share_pos, share_neg = risky_share(pos, qid), risky_share(neg, qid)
    x_neg = sum(1 for r in neg if r.answers[qid - 1] == 2)
    x_pos = sum(1 for r in pos if r.answers[qid - 1] == 2)
    z, p = two_proportion_ztest(x_neg, len(neg), x_pos, len(pos))
    return EffectReport(
        question_id=qid,
        n_pos=len(pos),
        n_neg=len(neg),
        risky_share_pos=share_pos,
        risky_share_neg=share_neg,
        delta=share_neg - share_pos,
        z_stat=z,
        p_value=p,
    )


def reflection_summary(
    v1_records: Sequence[ResponseRecord], v2_records: Sequence[ResponseRecord]
) -> ReflectionReport:
    """Aggregate risky shares over all framed question instances.

    Every (record, question) pair counts once, labeled by the frame that
    record's version showed for that question. A positive delta (more risk
    taking under negative framing) is consistent with reflection.
    """
    if not v1_records and not v2_records:
        raise AnalysisError("no records to summarize")
    x = {FrameLabel.P: 0, FrameLabel.N: 0}
    n = {FrameLabel.P: 0, FrameLabel.N: 0}
    for version, records in ((1, v1_records), (2, v2_records)):
        for qid in range(1, 8):
            frame = frame_for(version, qid)
            for r in records:
                n[frame] += 1
                if r.answers[qid - 1] == 2:
                    x[frame] += 1
    if n[FrameLabel.P] == 0 or n[FrameLabel.N] == 0:
        raise AnalysisError("both frame pools must be non-empty")
    share_pos = x[FrameLabel.P] / n[FrameLabel.P]
    share_neg = x[FrameLabel.N] / n[FrameLabel.N]
    z, p = two_proportion_ztest(x[FrameLabel.N], n[FrameLabel.N], x[FrameLabel.P], n[FrameLabel.P])
    delta = share_neg - share_pos
    return ReflectionReport(
        n_pos=n[FrameLabel.P],
        n_neg=n[FrameLabel.N],
        risky_share_pos=share_pos,
        risky_share_neg=share_neg,
        delta=delta,
        z_stat=z,
        p_value=p,
        consistent_with_reflection=delta > 0,
    )


def _child_rng(seed: int, version: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{version}:{index}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def simulate(
    n_per_version: int, policy: AgentPolicy
) -> tuple[list[ResponseRecord], list[ResponseRecord]]:
    """Drive synthetic agents through the session engine, n per version.

    Each agent repeatedly picks a uniformly random available task and answers
    risky with the frame-appropriate policy probability. Fully deterministic
    for a given seed; synthetic records carry a fixed timestamp so identical
    seeds produce byte-identical streams.
    """
    if n_per_version < 1:
        raise AnalysisError(f"n_per_version must be >= 1, got {n_per_version}")
    results: dict[int, list[ResponseRecord]] = {1: [], 2: []}
    for version in (1, 2):
        for i in range(n_per_version):
            rng = _child_rng(policy.seed, version, i)
            tag = f"sim-{policy.seed}-v{version}-{i}"
            state = engine.start_session(Demographics(), version, session_id=tag)
            while not engine.is_complete(state):
                task = rng.choice(sorted(engine.available_tasks(state)))
                frame = frame_for(version, task)
                p_risky = policy.p_risky_negative if frame is FrameLabel.N else policy.p_risky_positive
                choice = 2 if rng.random() < p_risky else 1
                state, _, _ = engine.submit_answer(state, task, choice)
            record = engine.to_record(
                state,
                record_id=hashlib.sha256(tag.encode("utf-8")).hexdigest()[:32],
                created_at=SIM_TIMESTAMP,
            )
            results[version].append(record)
    return results[1], results[2]


def allais_demo() -> dict:
    """The four lotteries, their expected values, and the verdict per pattern."""
    gambles = [
        {
            "lottery": lot.value,
            "outcomes": [[float(v), float(p)] for v, p in ALLAIS_GAMBLES[lot].outcomes],
            "expected_value_millions": expected_value(ALLAIS_GAMBLES[lot]),
        }
        for lot in (Lottery.ONE_A, Lottery.ONE_B, Lottery.TWO_A, Lottery.TWO_B)
    ]
    patterns = []
    for a in (Lottery.ONE_A, Lottery.ONE_B):
        for b in (Lottery.TWO_A, Lottery.TWO_B):
            patterns.append(
                {
                    "pattern": [a.value, b.value],
                    "violates_expected_utility": allais_violates_eut(AllaisChoice(a, b)),
                }
            )
    return {"gambles": gambles, "patterns": patterns}


def render_allais_demo() -> str:
    demo = allais_demo()
    lines = ["Four-lottery demonstration", ""]
    for g in demo["gambles"]:
        outcomes = ", ".join(f"{int(p * 100)}% -> {v:g}M" for v, p in g["outcomes"])
        lines.append(f"  {g['lottery']}: {outcomes}  (EV {g['expected_value_millions']:g}M)")
    lines.append("")
    for entry in demo["patterns"]:
        verdict = "violates expected utility" if entry["violates_expected_utility"] else "consistent"
        lines.append(f"  ({entry['pattern'][0]}, {entry['pattern'][1]}): {verdict}")
    return "\n".join(lines) + "\n"


def _demographics_breakdown(records: Sequence[ResponseRecord]) -> dict:
    genders: dict[str, int] = {}
    educations: dict[str, int] = {}
    ages = [r.age for r in records if r.age is not None]
    for r in records:
        genders[r.gender] = genders.get(r.gender, 0) + 1
        educations[r.education] = educations.get(r.education, 0) + 1
    return {
        "gender_counts": dict(sorted(genders.items())),
        "education_counts": dict(sorted(educations.items())),
        "age": {
            "reported": len(ages),
            "mean": sum(ages) / len(ages) if ages else None,
            "min": min(ages) if ages else None,
            "max": max(ages) if ages else None,
        },
    }


def _effect_entry(v1: Sequence[ResponseRecord], v2: Sequence[ResponseRecord], qid: int) -> dict:
    pos, neg = _pools(v1, v2, qid)
    entry: dict = {
        "question_id": qid,
        "positive_pool_version": 1 if frame_for(1, qid) is FrameLabel.P else 2,
        "n_pos": len(pos),
        "n_neg": len(neg),
    }
    if pos and neg:
        report = framing_effect(v1, v2, qid)
        entry.update(
            risky_share_pos=report.risky_share_pos,
            risky_share_neg=report.risky_share_neg,
            delta=report.delta,
            z_stat=report.z_stat,
            p_value=report.p_value,
        )
    else:
        entry["test"] = "skipped: a frame pool is empty"
    return entry


def build_report(
    v1_records: Sequence[ResponseRecord], v2_records: Sequence[ResponseRecord]
) -> dict:
    """Structured analysis summary; deterministic field ordering throughout."""
    doc = {
        "counts": {
            "version_1": len(v1_records),
            "version_2": len(v2_records),
            "total": len(v1_records) + len(v2_records),
        },
        "demographics": _demographics_breakdown(list(v1_records) + list(v2_records)),
        "bank_validation": [
            {"question_id": c.id, "quantified": c.quantified, "ev_equal": c.ev_equal}
            for c in validate_bank()
        ],
        "bank_checksum": bank_checksum(),
        "questions": [_effect_entry(v1_records, v2_records, qid) for qid in range(1, 8)],
    }
    if v1_records and v2_records:
        r = reflection_summary(v1_records, v2_records)
        doc["reflection"] = {
            "n_pos": r.n_pos,
            "n_neg": r.n_neg,
            "risky_share_pos": r.risky_share_pos,
            "risky_share_neg": r.risky_share_neg,
            "delta": r.delta,
            "z_stat": r.z_stat,
            "p_value": r.p_value,
            "consistent_with_reflection": r.consistent_with_reflection,
        }
    else:
        doc["reflection"] = None
    return doc


def render_report(
    v1_records: Sequence[ResponseRecord],
    v2_records: Sequence[ResponseRecord],
    format: str = "markdown",
) -> str:
    """Render the analysis summary as markdown or as structured JSON."""
    doc = build_report(v1_records, v2_records)
    if format == "structured":
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if format != "markdown":
        raise AnalysisError(f"unknown format {format!r}")

    lines = ["# Response analysis", ""]
    counts = doc["counts"]
    lines.append(f"Records: {counts['total']} total ({counts['version_1']} V1, {counts['version_2']} V2)")
    lines.append("")
    lines.append("## Bank validation")
    lines.append("")
    for c in doc["bank_validation"]:
        if c["quantified"]:
            status = "EV equal" if c["ev_equal"] else "EV MISMATCH"
        else:
            status = "not quantified (no EV claim)"
        lines.append(f"- Question {c['question_id']}: {status}")
    lines.append("")
    for q in doc["questions"]:
        lines.append(f"## Question {q['question_id']}")
        lines.append("")
        lines.append(f"Positive frame shown by version {q['positive_pool_version']}; "
                     f"pools: {q['n_pos']} positive, {q['n_neg']} negative.")
        if "p_value" in q:
            lines.append(
                f"Risky share {q['risky_share_neg']:.3f} (negative) vs {q['risky_share_pos']:.3f} "
                f"(positive); delta {q['delta']:+.3f}, z = {q['z_stat']:.3f}, p = {q['p_value']:.4g}."
            )
        else:
            lines.append(q["test"] + ".")
        lines.append("")
    lines.append("## Reflection summary")
    lines.append("")
    r = doc["reflection"]
    if r is None:
        lines.append("Skipped: need records from both versions.")
    else:
        label = "consistent with reflection" if r["consistent_with_reflection"] else "not consistent with reflection"
        lines.append(
            f"Aggregate risky share {r['risky_share_neg']:.3f} (negative frames, n={r['n_neg']}) vs "
            f"{r['risky_share_pos']:.3f} (positive frames, n={r['n_pos']}); delta {r['delta']:+.3f} "
            f"({label}), z = {r['z_stat']:.3f}, p = {r['p_value']:.4g}."
        )
    lines.append("")
    demo = doc["demographics"]
    lines.append("## Demographics")
    lines.append("")
    lines.append(f"Gender counts: {json.dumps(demo['gender_counts'], ensure_ascii=False)}")
    lines.append(f"Education counts: {json.dumps(demo['education_counts'], ensure_ascii=False)}")
    age = demo["age"]
    if age["reported"]:
        lines.append(f"Age: {age['reported']} reported, mean {age['mean']:.1f}, range {age['min']}-{age['max']}")
    else:
        lines.append("Age: none reported")
    lines.append("")
    return "\n".join(lines)
