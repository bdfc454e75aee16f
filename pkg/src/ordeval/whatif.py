"""Pure what-if exploration: patch a session, re-evaluate, diff the outcome."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import InvalidPatchError, Problem, UnknownLabelError, ValidationError
from .scale import Grade, parse_grade
from .session import (
    GLOBAL_MODE,
    EvaluationReport,
    QuantifierSpec,
    Session,
    evaluate,
    rank_of,
)
from .storage import quantifier_spec_from_json


@dataclass(frozen=True, slots=True)
class ScoreEdit:
    proposal: str
    expert: str
    criterion: str
    grade: str


@dataclass(frozen=True)
class Patch:
    """Edits to importances, scores, or the quantifier; grades given as labels.

    ``importances`` follows the session's importance mode: criterion to
    label in global mode, expert to such a mapping in per-expert mode.
    Patches merge into the session; untouched entries stay as they are.
    """

    importances: Mapping | None = None
    scores: tuple[ScoreEdit, ...] = ()
    quantifier: QuantifierSpec | None = None

    def is_empty(self) -> bool:
        return not self.importances and not self.scores and self.quantifier is None


def parse_patch(doc: Any) -> Patch:
    """Read a patch document; shape errors raise InvalidPatchError."""
    problems: list[Problem] = []
    if not isinstance(doc, dict):
        raise InvalidPatchError([Problem("$", "the patch must be a JSON object")])
    for key in doc:
        if key not in ("importances", "scores", "quantifier"):
            problems.append(Problem(key, "unknown field; patches edit importances, scores, or quantifier"))

    importances = doc.get("importances")
    if importances is not None and not isinstance(importances, dict):
        problems.append(Problem("importances", "expected an object"))
        importances = None

    edits: list[ScoreEdit] = []
    raw_scores = doc.get("scores", [])
    if not isinstance(raw_scores, list):
        problems.append(Problem("scores", "expected an array of score edits"))
    else:
        for i, entry in enumerate(raw_scores):
            if not isinstance(entry, dict):
                problems.append(Problem(f"scores[{i}]", "expected an object"))
                continue
            missing = [k for k in ("proposal", "expert", "criterion", "grade") if k not in entry]
            unknown = [k for k in entry if k not in ("proposal", "expert", "criterion", "grade")]
            if missing:
                problems.append(Problem(f"scores[{i}]", f"missing fields: {', '.join(missing)}"))
                continue
            for k in unknown:
                problems.append(Problem(f"scores[{i}].{k}", "unknown field"))
            if not all(isinstance(entry[k], str) for k in ("proposal", "expert", "criterion", "grade")):
                problems.append(Problem(f"scores[{i}]", "proposal, expert, criterion, grade must be strings"))
                continue
            edits.append(ScoreEdit(entry["proposal"], entry["expert"], entry["criterion"], entry["grade"]))

    quantifier = None
    if "quantifier" in doc:
        quantifier = quantifier_spec_from_json(doc["quantifier"], problems, path="quantifier")

    if problems:
        raise InvalidPatchError(problems)
    return Patch(importances=importances, scores=tuple(edits), quantifier=quantifier)


def _patched_importances(session: Session, patch_imp: Mapping, problems: list[Problem]) -> Mapping:
    cid_set = set(session.criterion_ids())
    eid_set = set(session.expert_ids())

    def merge_vector(base: Mapping[str, Grade], edits: Mapping, path: str) -> dict[str, Grade]:
        merged = dict(base)
        for cid, label in edits.items():
            if cid not in cid_set:
                problems.append(Problem(f"{path}.{cid}", "unknown criterion"))
                continue
            if not isinstance(label, str):
                problems.append(Problem(f"{path}.{cid}", "grade must be a label string"))
                continue
            try:
                merged[cid] = parse_grade(session.scale, label)
            except UnknownLabelError as exc:
                problems.append(Problem(f"{path}.{cid}", str(exc)))
        return merged

    if session.importance_mode == GLOBAL_MODE:
        return merge_vector(session.importances, patch_imp, "patch.importances")
    merged_all = {eid: dict(vec) for eid, vec in session.importances.items()}
    for eid, edits in patch_imp.items():
        if eid not in eid_set:
            problems.append(Problem(f"patch.importances.{eid}", "unknown expert"))
            continue
        if not isinstance(edits, Mapping):
            problems.append(Problem(f"patch.importances.{eid}", "expected a criterion-to-grade object"))
            continue
        merged_all[eid] = merge_vector(merged_all[eid], edits, f"patch.importances.{eid}")
    return merged_all


def apply_patch(session: Session, patch: Patch) -> Session:
    """A new session with the patch folded in; the input session is untouched."""
    problems: list[Problem] = []

    importances = session.importances
    if patch.importances:
        importances = _patched_importances(session, patch.importances, problems)

    scores = dict(session.scores)
    pid_set = set(session.proposal_ids())
    eid_set = set(session.expert_ids())
    cid_set = set(session.criterion_ids())
    for i, edit in enumerate(patch.scores):
        path = f"patch.scores[{i}]"
        bad = False
        for field_name, value, known in (
            ("proposal", edit.proposal, pid_set),
            ("expert", edit.expert, eid_set),
            ("criterion", edit.criterion, cid_set),
        ):
            if value not in known:
                problems.append(Problem(f"{path}.{field_name}", f"unknown {field_name} {value!r}"))
                bad = True
        if bad:
            continue
        try:
            scores[(edit.proposal, edit.expert, edit.criterion)] = parse_grade(session.scale, edit.grade)
        except UnknownLabelError as exc:
            problems.append(Problem(f"{path}.grade", str(exc)))

    quantifier = patch.quantifier if patch.quantifier is not None else session.quantifier
    if patch.quantifier is not None:
        try:
            patch.quantifier.build(len(session.experts), session.scale)
        except Exception as exc:
            problems.append(Problem("patch.quantifier", str(exc)))

    if problems:
        raise InvalidPatchError(problems)
    try:
        return dataclasses.replace(
            session, importances=importances, scores=scores, quantifier=quantifier
        )
    except ValidationError as exc:
        raise InvalidPatchError(exc.problems) from exc


@dataclass(frozen=True, slots=True)
class OverallChange:
    proposal: str
    old_overall: Grade
    new_overall: Grade
    old_rank: int
    new_rank: int


@dataclass(frozen=True, slots=True)
class UnitChange:
    proposal: str
    expert: str
    old: Grade
    new: Grade


@dataclass(frozen=True)
class RankDelta:
    """Per-proposal movement between two reports; empty when nothing changed."""

    overall: tuple[OverallChange, ...]
    unit_scores: tuple[UnitChange, ...]

    def is_empty(self) -> bool:
        return not self.overall and not self.unit_scores


@dataclass(frozen=True)
class WhatIfResult:
    report: EvaluationReport
    delta: RankDelta


def diff_reports(old: EvaluationReport, new: EvaluationReport) -> RankDelta:
    overall = []
    for pid in sorted(old.overall):
        old_grade, new_grade = old.overall[pid], new.overall[pid]
        old_rank, new_rank = rank_of(old, pid), rank_of(new, pid)
        if old_grade != new_grade or old_rank != new_rank:
            overall.append(OverallChange(pid, old_grade, new_grade, old_rank, new_rank))
    units = []
    for key in sorted(old.unit_scores):
        if old.unit_scores[key] != new.unit_scores[key]:
            units.append(UnitChange(key[0], key[1], old.unit_scores[key], new.unit_scores[key]))
    return RankDelta(overall=tuple(overall), unit_scores=tuple(units))


def what_if(session: Session, patch: Patch) -> WhatIfResult:
    """Evaluate the patched session without touching the stored one."""
    before = evaluate(session)
    after = evaluate(apply_patch(session, patch))
    return WhatIfResult(report=after, delta=diff_reports(before, after))


def delta_to_json(delta: RankDelta) -> dict:
    return {
        "overall": [
            {
                "proposal": c.proposal,
                "old": c.old_overall.label,
                "new": c.new_overall.label,
                "old_rank": c.old_rank,
                "new_rank": c.new_rank,
            }
            for c in delta.overall
        ],
        "unit_scores": [
            {"proposal": c.proposal, "expert": c.expert, "old": c.old.label, "new": c.new.label}
            for c in delta.unit_scores
        ],
    }


def delta_to_text(delta: RankDelta) -> str:
    if delta.is_empty():
        return "no changes"
    lines = []
    for c in delta.unit_scores:
        lines.append(
            f"unit score: {c.old.label} → {c.new.label} (proposal {c.proposal}, expert {c.expert})"
        )
    for c in delta.overall:
        line = f"overall: {c.old_overall.label} → {c.new_overall.label} (proposal {c.proposal})"
        if c.old_rank != c.new_rank:
            line += f", rank {c.old_rank} → {c.new_rank}"
        lines.append(line)
    return "\n".join(lines)
