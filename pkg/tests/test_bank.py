"""Question bank: verbatim stimulus texts, framing plan, deep structures.

The checksum pins the canonical serialization of the bank data; a failure
here means the stimuli were edited, which must be a deliberate act.
"""

from fractions import Fraction

import pytest

from framequest.bank import (
    FrameLabel,
    QuestionNotFoundError,
    all_questions,
    bank_checksum,
    canonical_serialization,
    frame_for,
    get_question,
    render,
    table1_fixture,
    validate_bank,
    version_plan,
)
from framequest.decisions import Domain, ValidationError, expected_value, expected_value_exact

PINNED_BANK_CHECKSUM = "154348a24c622b5bc4384eed7d0b6a11daf9603534caa7155b9b68fa6c787db2"

TABLE_2 = {
    1: ["P", "P", "N", "P", "N", "N", "P"],
    2: ["N", "N", "P", "N", "P", "P", "N"],
}


class TestGetQuestion:
    def test_q1_positive_certain_answer_text(self):
        assert "Potion A will recover 150" in get_question(1).positive.answer_one

    def test_q7_risky_deep_structure(self):
        risky = get_question(7).deep.risky
        assert risky.domain is Domain.LIVES
        assert risky.outcomes == ((Fraction(600), Fraction(3, 4)), (Fraction(0), Fraction(1, 4)))

    @pytest.mark.parametrize("bad_id", [0, 8, -1, "1", None])
    def test_out_of_range_ids(self, bad_id):
        with pytest.raises(QuestionNotFoundError):
            get_question(bad_id)

    def test_seven_questions(self):
        assert [q.id for q in all_questions()] == list(range(1, 8))


class TestFramePlan:
    @pytest.mark.parametrize("version", [1, 2])
    def test_table_rows(self, version):
        assert [frame_for(version, q).value for q in range(1, 8)] == TABLE_2[version]

    def test_q3_is_negative_in_v1_positive_in_v2(self):
        assert frame_for(1, 3) is FrameLabel.N
        assert frame_for(2, 3) is FrameLabel.P

    def test_versions_are_inverses_for_every_question(self):
        for q in range(1, 8):
            assert frame_for(1, q) is not frame_for(2, q)

    def test_invalid_version(self):
        with pytest.raises(ValidationError):
            frame_for(3, 1)

    def test_version_plan_object(self):
        plan = version_plan(2)
        assert plan.version == 2
        assert [f.value for f in plan.frames] == TABLE_2[2]


class TestRender:
    def test_q1_negative_risky_text(self):
        assert "40% chance of damaging your health points" in render(1, FrameLabel.N).answer_two

    def test_q2_positive_certain_text(self):
        assert "he will give you back 2 gold" in render(2, FrameLabel.P).answer_one

    def test_q6_negative_risky_text(self):
        assert "95% of the people have even worse pain" in render(6, FrameLabel.N).answer_two

    def test_rendering_is_pure(self):
        for q in range(1, 8):
            for frame in FrameLabel:
                assert render(q, frame) == render(q, frame)

    def test_scripts_share_npc_and_question_across_frames(self):
        for q in all_questions():
            assert q.positive.npc_name == q.negative.npc_name
            assert q.positive.question == q.negative.question

    def test_frames_differ_in_answer_surface(self):
        for q in all_questions():
            assert q.positive.answer_one != q.negative.answer_one
            assert q.positive.answer_two != q.negative.answer_two


class TestValidateBank:
    def test_q4_quantified_and_equal(self):
        entry = next(c for c in validate_bank() if c.id == 4)
        assert entry.quantified and entry.ev_equal
        # 20 = 0.4 * 50
        assert expected_value(get_question(4).deep.risky) == 20

    def test_q5_not_quantified(self):
        entry = next(c for c in validate_bank() if c.id == 5)
        assert not entry.quantified
        assert entry.ev_equal is None

    def test_all_quantified_entries_equal(self):
        quantified = [c for c in validate_bank() if c.quantified]
        assert sorted(c.id for c in quantified) == [1, 3, 4, 7]
        assert all(c.ev_equal for c in quantified)

    def test_ev_equality_is_exact_rational(self):
        for q in all_questions():
            if q.deep.quantified:
                assert expected_value_exact(q.deep.certain) == expected_value_exact(q.deep.risky)


class TestEndowmentDemo:
    def test_certain_prospect(self):
        fixture = table1_fixture()
        assert fixture.deep.certain.outcomes == ((Fraction(100), Fraction(1)),)
        assert fixture.deep.domain is Domain.MONEY

    def test_expected_values_both_100(self):
        fixture = table1_fixture()
        # 0.5 * 200 by hand
        assert expected_value(fixture.deep.certain) == 100
        assert expected_value(fixture.deep.risky) == 100

    def test_excluded_from_question_range(self):
        fixture = table1_fixture()
        assert fixture.id not in range(1, 8)
        with pytest.raises(QuestionNotFoundError):
            get_question(fixture.id)


class TestCertainFirstOrdering:
    def test_annotation_present_for_all_questions(self):
        # The bank loader rejects any entry not annotated certain-first, so
        # loading at all proves the annotation; spot-check the texts against
        # the deep structures for the fully numeric questions.
        certain_markers = {1: "Potion A", 3: "3.5 gold in total", 4: "20 gift card gold", 7: "Plan A"}
        for qid, marker in certain_markers.items():
            assert marker in get_question(qid).positive.answer_one

    def test_risky_answers_name_chances(self):
        for q in all_questions():
            assert "chance" in q.positive.answer_two or "%" in q.positive.answer_two


class TestChecksum:
    def test_canonical_serialization_is_stable(self):
        assert canonical_serialization() == canonical_serialization()

    def test_pinned_checksum(self):
        assert bank_checksum() == PINNED_BANK_CHECKSUM


class TestLabels:
    def test_q1_labels(self):
        q = get_question(1)
        assert q.labels_positive == ("gain", "neutral")
        assert q.labels_negative == ("loss", "neutral")

    def test_single_label_questions(self):
        for qid in (3, 4, 5, 6, 7):
            q = get_question(qid)
            assert q.labels_positive == ("gain",)
            assert q.labels_negative == ("loss",)
