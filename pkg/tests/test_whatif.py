from __future__ import annotations

import json
import random

import pytest

from ordeval import (
    InvalidPatchError,
    Patch,
    QuantifierSpec,
    ScoreEdit,
    apply_patch,
    delta_to_json,
    delta_to_text,
    evaluate,
    parse_patch,
    report_to_json,
    what_if,
)
from helpers import random_session


class TestImportancePatch:
    def test_demoting_track_record_lifts_first_unit_score(self, tutorial_session):
        result = what_if(tutorial_session, Patch(importances={"c3": "Low"}))
        assert result.report.unit_scores[("alpha", "e1")].label == "Medium"
        changed = {(c.proposal, c.expert): (c.old.label, c.new.label) for c in result.delta.unit_scores}
        assert changed[("alpha", "e1")] == ("Low", "Medium")
        # the committed overall grades did not move in this scenario
        assert result.delta.overall == ()

    def test_session_is_untouched(self, tutorial_session):
        before = report_to_json(evaluate(tutorial_session))
        what_if(tutorial_session, Patch(importances={"c3": "Low"}))
        assert report_to_json(evaluate(tutorial_session)) == before
        assert tutorial_session.importances["c3"].label == "Very High"

    def test_empty_patch_identity(self, tutorial_session):
        result = what_if(tutorial_session, Patch())
        assert result.delta.is_empty()
        assert report_to_json(result.report) == report_to_json(evaluate(tutorial_session))


class TestQuantifierPatch:
    def test_all_to_any_never_lowers_overall(self):
        rng = random.Random(23)
        for _ in range(40):
            session = random_session(rng)
            if session.quantifier.kind != "all":
                continue
            before = evaluate(session)
            result = what_if(session, Patch(quantifier=QuantifierSpec(kind="any")))
            for pid, grade in result.report.overall.items():
                assert grade.index >= before.overall[pid].index

    def test_rank_moves_are_reported(self, tutorial_session):
        result = what_if(tutorial_session, Patch(quantifier=QuantifierSpec(kind="any")))
        # under "any" both alpha (Very High) and gamma (Medium) move
        moved = {c.proposal for c in result.delta.overall}
        assert "alpha" in moved
        alpha = next(c for c in result.delta.overall if c.proposal == "alpha")
        assert alpha.old_overall.label == "Medium"
        assert alpha.new_overall.label == "Very High"
        assert alpha.old_rank == 2 and alpha.new_rank == 1


class TestScorePatch:
    def test_score_edit_applies(self, tutorial_session):
        patch = Patch(scores=(ScoreEdit("beta", "e1", "c1", "None"),))
        result = what_if(tutorial_session, patch)
        assert result.report.unit_scores[("beta", "e1")].label == "None"

    def test_unknown_ids_rejected_with_paths(self, tutorial_session):
        with pytest.raises(InvalidPatchError) as exc:
            what_if(tutorial_session, Patch(scores=(ScoreEdit("zz", "e1", "qq", "High"),)))
        paths = {p.path for p in exc.value.problems}
        assert any("proposal" in p for p in paths)
        assert any("criterion" in p for p in paths)

    def test_off_scale_grade_rejected(self, tutorial_session):
        with pytest.raises(InvalidPatchError, match="excellent"):
            what_if(tutorial_session, Patch(importances={"c3": "excellent"}))

    def test_unknown_criterion_in_importances(self, tutorial_session):
        with pytest.raises(InvalidPatchError, match="unknown criterion"):
            what_if(tutorial_session, Patch(importances={"c9": "Low"}))


class TestParsePatch:
    def test_document_round_trip(self):
        patch = parse_patch(
            {
                "importances": {"c3": "Low"},
                "scores": [{"proposal": "p", "expert": "e", "criterion": "c", "grade": "High"}],
                "quantifier": {"kind": "at-least", "m": 2},
            }
        )
        assert patch.importances == {"c3": "Low"}
        assert patch.scores == (ScoreEdit("p", "e", "c", "High"),)
        assert patch.quantifier == QuantifierSpec(kind="at-least", m=2)

    def test_unknown_field(self):
        with pytest.raises(InvalidPatchError, match="notes"):
            parse_patch({"notes": []})

    def test_score_entry_missing_fields(self):
        with pytest.raises(InvalidPatchError, match="missing fields"):
            parse_patch({"scores": [{"proposal": "p"}]})

    def test_non_object(self):
        with pytest.raises(InvalidPatchError):
            parse_patch("importances: c3")

    def test_empty_document_is_empty_patch(self):
        assert parse_patch({}).is_empty()


class TestDeltaRendering:
    def test_text_mentions_unit_change(self, tutorial_session):
        result = what_if(tutorial_session, Patch(importances={"c3": "Low"}))
        text = delta_to_text(result.delta)
        assert "unit score: Low → Medium" in text
        assert "alpha" in text and "e1" in text

    def test_text_no_changes(self, tutorial_session):
        result = what_if(tutorial_session, Patch())
        assert delta_to_text(result.delta) == "no changes"

    def test_json_shape(self, tutorial_session):
        result = what_if(tutorial_session, Patch(quantifier=QuantifierSpec(kind="any")))
        doc = delta_to_json(result.delta)
        assert set(doc) == {"overall", "unit_scores"}
        assert all(set(c) == {"proposal", "old", "new", "old_rank", "new_rank"} for c in doc["overall"])
        json.dumps(doc)


class TestApplyPatch:
    def test_per_expert_importance_patch(self, tutorial_session):
        import dataclasses

        per_expert = dataclasses.replace(
            tutorial_session,
            importance_mode="per-expert",
            importances={e: dict(tutorial_session.importances) for e in tutorial_session.expert_ids()},
        )
        patched = apply_patch(per_expert, Patch(importances={"e1": {"c3": "Low"}}))
        assert patched.importances["e1"]["c3"].label == "Low"
        assert patched.importances["e2"]["c3"].label == "Very High"

    def test_per_expert_unknown_expert(self, tutorial_session):
        import dataclasses

        per_expert = dataclasses.replace(
            tutorial_session,
            importance_mode="per-expert",
            importances={e: dict(tutorial_session.importances) for e in tutorial_session.expert_ids()},
        )
        with pytest.raises(InvalidPatchError, match="unknown expert"):
            apply_patch(per_expert, Patch(importances={"e9": {"c3": "Low"}}))

    def test_bad_quantifier_for_expert_count(self, tutorial_session):
        with pytest.raises(InvalidPatchError, match="quantifier"):
            apply_patch(tutorial_session, Patch(quantifier=QuantifierSpec(kind="at-least", m=9)))
