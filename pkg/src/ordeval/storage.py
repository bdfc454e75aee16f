"""Session file format: one UTF-8 JSON document, grades stored as labels."""

from __future__ import annotations

import json
from typing import Any, Mapping

from .errors import ParseError, Problem, UnknownLabelError, ValidationError
from .scale import Grade, OrdinalScale, parse_grade
from .session import (
    GLOBAL_MODE,
    PER_EXPERT_MODE,
    Criterion,
    Expert,
    Proposal,
    QuantifierSpec,
    Session,
)

FORMAT_VERSION = 1

_TOP_LEVEL_KEYS = {
    "format",
    "scale",
    "criteria",
    "experts",
    "proposals",
    "importance_mode",
    "importances",
    "quantifier",
    "scores",
    "notes",
    "lenient",
}


def _expect_str(value: Any, path: str, problems: list[Problem]) -> str | None:
    if isinstance(value, str):
        return value
    problems.append(Problem(path, f"expected a string, got {type(value).__name__}"))
    return None


def _record(
    value: Any, path: str, required: tuple[str, ...], optional: tuple[str, ...],
    problems: list[Problem],
) -> dict | None:
    if not isinstance(value, dict):
        problems.append(Problem(path, "expected an object"))
        return None
    for key in value:
        if key not in required and key not in optional:
            problems.append(Problem(f"{path}.{key}", "unknown field"))
    for key in required:
        if key not in value:
            problems.append(Problem(f"{path}.{key}", "missing field"))
            return None
    return value


def _parse_scale(value: Any, problems: list[Problem]) -> OrdinalScale | None:
    if not isinstance(value, list):
        problems.append(Problem("scale", "expected an array of label records"))
        return None
    labels: list[str] = []
    aliases: list[tuple[str, ...]] = []
    for i, entry in enumerate(value):
        record = _record(entry, f"scale[{i}]", ("label",), ("aliases",), problems)
        if record is None:
            return None
        label = _expect_str(record["label"], f"scale[{i}].label", problems)
        if label is None:
            return None
        alias_list = record.get("aliases", [])
        if not isinstance(alias_list, list) or not all(isinstance(a, str) for a in alias_list):
            problems.append(Problem(f"scale[{i}].aliases", "expected an array of strings"))
            return None
        labels.append(label)
        aliases.append(tuple(alias_list))
    try:
        return OrdinalScale(tuple(labels), tuple(aliases))
    except ValueError as exc:
        problems.append(Problem("scale", str(exc)))
        return None


def _parse_grade_field(
    scale: OrdinalScale | None, text: Any, path: str, problems: list[Problem],
    context: str = "",
) -> Grade | None:
    label = _expect_str(text, path, problems)
    if label is None or scale is None:
        return None
    try:
        return parse_grade(scale, label)
    except UnknownLabelError as exc:
        suffix = f" {context}" if context else ""
        problems.append(Problem(path, f"{exc}{suffix}"))
        return None


def quantifier_spec_from_json(value: Any, problems: list[Problem], path: str = "quantifier") -> QuantifierSpec | None:
    record = _record(value, path, ("kind",), ("m", "values"), problems)
    if record is None:
        return None
    kind = record["kind"]
    m = record.get("m")
    values = record.get("values")
    if values is not None:
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            problems.append(Problem(f"{path}.values", "expected an array of grade labels"))
            return None
        values = tuple(values)
    try:
        return QuantifierSpec(kind=kind, m=m, values=values)
    except ValueError as exc:
        problems.append(Problem(path, str(exc)))
        return None


def session_from_json(doc: Any) -> Session:
    """Build a session from a parsed document, reporting every defect at once."""
    problems: list[Problem] = []
    if not isinstance(doc, dict):
        raise ValidationError([Problem("$", "the session document must be a JSON object")])
    for key in doc:
        if key not in _TOP_LEVEL_KEYS:
            problems.append(Problem(key, "unknown field"))
    for key in ("format", "scale", "criteria", "experts", "proposals",
                "importance_mode", "importances", "quantifier", "scores"):
        if key not in doc:
            problems.append(Problem(key, "missing field"))
    if problems:
        raise ValidationError(problems)

    if doc["format"] != FORMAT_VERSION or isinstance(doc["format"], bool):
        problems.append(Problem("format", f"unsupported format {doc['format']!r}; expected {FORMAT_VERSION}"))

    scale = _parse_scale(doc["scale"], problems)

    criteria: list[Criterion] = []
    experts: list[Expert] = []
    proposals: list[Proposal] = []
    for name, out, required, optional, builder in (
        ("criteria", criteria, ("id",), ("title", "description"),
         lambda r: Criterion(id=r["id"], title=r.get("title", ""), description=r.get("description", ""))),
        ("experts", experts, ("id",), ("name",),
         lambda r: Expert(id=r["id"], name=r.get("name", ""))),
        ("proposals", proposals, ("id",), ("title",),
         lambda r: Proposal(id=r["id"], title=r.get("title", ""))),
    ):
        value = doc[name]
        if not isinstance(value, list):
            problems.append(Problem(name, "expected an array"))
            continue
        for i, entry in enumerate(value):
            record = _record(entry, f"{name}[{i}]", required, optional, problems)
            if record is None:
                continue
            ok = True
            for field_name in (*required, *optional):
                if field_name in record and _expect_str(record[field_name], f"{name}[{i}].{field_name}", problems) is None:
                    ok = False
            if ok:
                out.append(builder(record))

    mode = doc["importance_mode"]
    if mode not in (GLOBAL_MODE, PER_EXPERT_MODE):
        problems.append(Problem("importance_mode", f"must be {GLOBAL_MODE!r} or {PER_EXPERT_MODE!r}"))

    importances: dict = {}
    raw_importances = doc["importances"]
    if not isinstance(raw_importances, dict):
        problems.append(Problem("importances", "expected an object"))
    elif mode == PER_EXPERT_MODE:
        for eid, vec in raw_importances.items():
            if not isinstance(vec, dict):
                problems.append(Problem(f"importances.{eid}", "expected a criterion-to-grade object"))
                continue
            parsed_vec = {}
            for cid, label in vec.items():
                grade = _parse_grade_field(scale, label, f"importances.{eid}.{cid}", problems)
                if grade is not None:
                    parsed_vec[cid] = grade
            importances[eid] = parsed_vec
    else:
        for cid, label in raw_importances.items():
            grade = _parse_grade_field(scale, label, f"importances.{cid}", problems)
            if grade is not None:
                importances[cid] = grade

    quantifier = quantifier_spec_from_json(doc["quantifier"], problems)

    scores: dict[tuple[str, str, str], Grade] = {}
    raw_scores = doc["scores"]
    if not isinstance(raw_scores, list):
        problems.append(Problem("scores", "expected an array of score records"))
    else:
        for i, entry in enumerate(raw_scores):
            record = _record(entry, f"scores[{i}]", ("proposal", "expert", "criterion", "grade"), (), problems)
            if record is None:
                continue
            pid = _expect_str(record["proposal"], f"scores[{i}].proposal", problems)
            eid = _expect_str(record["expert"], f"scores[{i}].expert", problems)
            cid = _expect_str(record["criterion"], f"scores[{i}].criterion", problems)
            if pid is None or eid is None or cid is None:
                continue
            cell = f"(proposal {pid!r}, expert {eid!r}, criterion {cid!r})"
            grade = _parse_grade_field(scale, record["grade"], f"scores[{i}].grade", problems, context=cell)
            if grade is None:
                continue
            if (pid, eid, cid) in scores:
                problems.append(Problem(f"scores[{i}]", f"duplicate cell {cell}"))
                continue
            scores[(pid, eid, cid)] = grade

    notes: dict[tuple[str, str, str], str] = {}
    raw_notes = doc.get("notes", [])
    if not isinstance(raw_notes, list):
        problems.append(Problem("notes", "expected an array of note records"))
    else:
        for i, entry in enumerate(raw_notes):
            record = _record(entry, f"notes[{i}]", ("proposal", "expert", "criterion", "text"), (), problems)
            if record is None:
                continue
            pid = _expect_str(record["proposal"], f"notes[{i}].proposal", problems)
            eid = _expect_str(record["expert"], f"notes[{i}].expert", problems)
            cid = _expect_str(record["criterion"], f"notes[{i}].criterion", problems)
            text = _expect_str(record["text"], f"notes[{i}].text", problems)
            if None in (pid, eid, cid, text):
                continue
            notes[(pid, eid, cid)] = text

    lenient = doc.get("lenient", False)
    if not isinstance(lenient, bool):
        problems.append(Problem("lenient", "expected true or false"))
        lenient = False

    if problems or scale is None or quantifier is None:
        raise ValidationError(problems)

    return Session(
        scale=scale,
        criteria=tuple(criteria),
        experts=tuple(experts),
        proposals=tuple(proposals),
        importance_mode=mode,
        importances=importances,
        quantifier=quantifier,
        scores=scores,
        notes=notes,
        lenient=lenient,
    )


def session_to_json(session: Session) -> dict:
    """The canonical document form; array orders are deterministic."""
    if session.importance_mode == GLOBAL_MODE:
        importances: dict = {cid: session.importances[cid].label for cid in session.criterion_ids()}
    else:
        importances = {
            eid: {cid: session.importances[eid][cid].label for cid in session.criterion_ids()}
            for eid in session.expert_ids()
        }
    doc = {
        "format": FORMAT_VERSION,
        "scale": [
            {"label": label, "aliases": list(alts)}
            for label, alts in zip(session.scale.labels, session.scale.aliases)
        ],
        "criteria": [
            {"id": c.id, "title": c.title, "description": c.description} for c in session.criteria
        ],
        "experts": [{"id": e.id, "name": e.name} for e in session.experts],
        "proposals": [{"id": p.id, "title": p.title} for p in session.proposals],
        "importance_mode": session.importance_mode,
        "importances": importances,
        "quantifier": session.quantifier.to_json(),
        "scores": [
            {"proposal": pid, "expert": eid, "criterion": cid, "grade": session.scores[(pid, eid, cid)].label}
            for pid, eid, cid in sorted(session.scores)
        ],
        "notes": [
            {"proposal": pid, "expert": eid, "criterion": cid, "text": session.notes[(pid, eid, cid)]}
            for pid, eid, cid in sorted(session.notes)
        ],
    }
    if session.lenient:
        doc["lenient"] = True
    return doc


def load_session(data: bytes | str) -> Session:
    """Parse and validate a session file."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"session file is not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"session file is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return session_from_json(doc)


def save_session(session: Session) -> bytes:
    """Serialize a session; load(save(s)) is structurally equal to s."""
    return (json.dumps(session_to_json(session), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
