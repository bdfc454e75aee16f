"""The evaluation workspace: who scores what, and the full two-stage report.

A session holds proposals, criteria, experts, the score grid, importance
vectors (one global vector or one per expert), free-text notes, and the
chosen quantifier.  Evaluation is pure: per-expert unit scores first, then
quantifier-guided aggregation per proposal, then a tie-aware ranking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import LengthMismatchError, Problem, ValidationError
from .owa import Witness, aggregate_witness
from .quantifier import Quantifier, q_all, q_any, q_at_least, q_average, q_custom
from .scale import Grade, OrdinalScale, parse_grade
from .unit import CriterionVector, ValidationFinding, unit_score, validate_importances

GLOBAL_MODE = "global"
PER_EXPERT_MODE = "per-expert"

QUANTIFIER_KINDS = ("all", "any", "at-least", "average", "custom")


@dataclass(frozen=True, slots=True)
class Criterion:
    id: str
    title: str = ""
    description: str = ""


@dataclass(frozen=True, slots=True)
class Expert:
    id: str
    name: str = ""


@dataclass(frozen=True, slots=True)
class Proposal:
    id: str
    title: str = ""


@dataclass(frozen=True, slots=True)
class QuantifierSpec:
    """A declarative quantifier choice, resolved against the session at evaluation time."""

    kind: str
    m: int | None = None
    values: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in QUANTIFIER_KINDS:
            raise ValueError(
                f"unknown quantifier kind {self.kind!r}; expected one of {', '.join(QUANTIFIER_KINDS)}"
            )
        if self.kind == "at-least":
            if not isinstance(self.m, int) or isinstance(self.m, bool):
                raise ValueError("at-least quantifier needs an integer threshold m")
        elif self.m is not None:
            raise ValueError(f"quantifier kind {self.kind!r} takes no threshold")
        if self.kind == "custom":
            if not self.values:
                raise ValueError("custom quantifier needs a table of grade labels")
            object.__setattr__(self, "values", tuple(str(v) for v in self.values))
        elif self.values is not None:
            raise ValueError(f"quantifier kind {self.kind!r} takes no value table")

    def build(self, r: int, scale: OrdinalScale) -> Quantifier:
        """Materialize the table for r experts on the session scale."""
        if self.kind == "all":
            return q_all(r, scale)
        if self.kind == "any":
            return q_any(r, scale)
        if self.kind == "at-least":
            assert self.m is not None
            return q_at_least(self.m, r, scale)
        if self.kind == "average":
            return q_average(r, scale)
        assert self.values is not None
        if len(self.values) != r + 1:
            raise LengthMismatchError(
                f"custom quantifier lists {len(self.values)} values; {r} experts need {r + 1}"
            )
        return q_custom(tuple(parse_grade(scale, v) for v in self.values))

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.m is not None:
            doc["m"] = self.m
        if self.values is not None:
            doc["values"] = list(self.values)
        return doc


CellKey = tuple[str, str, str]  # (proposal_id, expert_id, criterion_id)


def _cell_text(key: CellKey) -> str:
    proposal, expert, criterion = key
    return f"(proposal {proposal!r}, expert {expert!r}, criterion {criterion!r})"


@dataclass(frozen=True, slots=True)
class Session:
    """An immutable evaluation workspace.

    ``importances`` maps criterion id to grade in global mode, or expert id
    to such a mapping in per-expert mode.  In strict mode (the default) the
    score grid must cover every proposal x expert x criterion cell; a
    lenient session lets experts skip criteria instead.
    Construction validates everything and reports all violations at once.
    """

    scale: OrdinalScale
    criteria: tuple[Criterion, ...]
    experts: tuple[Expert, ...]
    proposals: tuple[Proposal, ...]
    importance_mode: str
    importances: Mapping
    quantifier: QuantifierSpec
    scores: Mapping[CellKey, Grade]
    notes: Mapping[CellKey, str] = field(default_factory=dict)
    lenient: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "experts", tuple(self.experts))
        object.__setattr__(self, "proposals", tuple(self.proposals))
        if self.importance_mode == GLOBAL_MODE:
            importances = dict(self.importances)
        else:
            importances = {key: dict(vec) for key, vec in dict(self.importances).items()}
        object.__setattr__(self, "importances", importances)
        object.__setattr__(self, "scores", dict(self.scores))
        object.__setattr__(self, "notes", dict(self.notes))
        problems = _session_problems(self)
        if problems:
            raise ValidationError(problems)

    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def expert_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.experts)

    def proposal_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.proposals)

    def importances_for(self, expert_id: str) -> Mapping[str, Grade]:
        """The importance vector the given expert evaluates under."""
        if self.importance_mode == GLOBAL_MODE:
            return self.importances
        return self.importances[expert_id]


def _check_importance_vector(
    mapping: Mapping, path: str, criterion_ids: tuple[str, ...], scale: OrdinalScale,
    problems: list[Problem],
) -> None:
    known = set(criterion_ids)
    for cid in criterion_ids:
        if cid not in mapping:
            problems.append(Problem(f"{path}.{cid}", "missing importance"))
    for key, value in mapping.items():
        if key not in known:
            problems.append(Problem(f"{path}.{key}", "unknown criterion"))
        elif not isinstance(value, Grade):
            problems.append(Problem(f"{path}.{key}", "importance must be a grade"))
        elif value.scale != scale:
            problems.append(Problem(f"{path}.{key}", "grade is not on the session scale"))


def _session_problems(s: Session) -> list[Problem]:
    problems: list[Problem] = []
    for kind, items in ("criteria", s.criteria), ("experts", s.experts), ("proposals", s.proposals):
        seen: set[str] = set()
        for i, item in enumerate(items):
            if not item.id or not item.id.strip():
                problems.append(Problem(f"{kind}[{i}].id", "empty id"))
            elif item.id in seen:
                problems.append(Problem(f"{kind}[{i}].id", f"duplicate id {item.id!r}"))
            seen.add(item.id)
    if not s.experts:
        problems.append(Problem("experts", "at least one expert is required"))
    if s.importance_mode not in (GLOBAL_MODE, PER_EXPERT_MODE):
        problems.append(
            Problem("importance_mode", f"must be {GLOBAL_MODE!r} or {PER_EXPERT_MODE!r}, got {s.importance_mode!r}")
        )
        return problems

    cids = tuple(c.id for c in s.criteria)
    eids = tuple(e.id for e in s.experts)
    if s.importance_mode == GLOBAL_MODE:
        _check_importance_vector(s.importances, "importances", cids, s.scale, problems)
    else:
        for eid in eids:
            if eid not in s.importances:
                problems.append(Problem(f"importances.{eid}", "missing importance vector"))
        for key, vec in s.importances.items():
            if key not in set(eids):
                problems.append(Problem(f"importances.{key}", "unknown expert"))
            elif not isinstance(vec, Mapping):
                problems.append(Problem(f"importances.{key}", "expected a criterion-to-grade mapping"))
            else:
                _check_importance_vector(vec, f"importances.{key}", cids, s.scale, problems)

    pid_set, eid_set, cid_set = set(p.id for p in s.proposals), set(eids), set(cids)
    for key, grade in s.scores.items():
        proposal, expert, criterion = key
        if proposal not in pid_set:
            problems.append(Problem("scores", f"unknown proposal in {_cell_text(key)}"))
        if expert not in eid_set:
            problems.append(Problem("scores", f"unknown expert in {_cell_text(key)}"))
        if criterion not in cid_set:
            problems.append(Problem("scores", f"unknown criterion in {_cell_text(key)}"))
        if not isinstance(grade, Grade):
            problems.append(Problem("scores", f"score must be a grade in {_cell_text(key)}"))
        elif grade.scale != s.scale:
            problems.append(Problem("scores", f"grade not on the session scale in {_cell_text(key)}"))
    if not s.lenient:
        for pid in s.proposal_ids():
            for eid in eids:
                for cid in cids:
                    if (pid, eid, cid) not in s.scores:
                        problems.append(
                            Problem("scores", f"missing score for {_cell_text((pid, eid, cid))}")
                        )
    for key in s.notes:
        proposal, expert, criterion = key
        if proposal not in pid_set or expert not in eid_set or criterion not in cid_set:
            problems.append(Problem("notes", f"unknown ids in {_cell_text(key)}"))

    if s.experts:
        try:
            s.quantifier.build(len(s.experts), s.scale)
        except Exception as exc:  # surfaced as a located problem, whatever the cause
            problems.append(Problem("quantifier", str(exc)))
    return problems


@dataclass(frozen=True, slots=True)
class RankGroup:
    """Proposals sharing one overall grade; rank 1 is best."""

    rank: int
    grade: Grade
    proposals: tuple[str, ...]


@dataclass(frozen=True)
class EvaluationReport:
    unit_scores: Mapping[tuple[str, str], Grade]
    overall: Mapping[str, Grade]
    witness: Mapping[str, Witness]
    ranking: tuple[RankGroup, ...]
    findings: tuple[ValidationFinding, ...]


def evaluate(session: Session) -> EvaluationReport:
    """Run both stages over the whole grid and rank the proposals."""
    q = session.quantifier.build(len(session.experts), session.scale)

    findings: list[ValidationFinding] = []
    if session.importance_mode == GLOBAL_MODE:
        findings.extend(validate_importances(session.importances))
    else:
        for eid in session.expert_ids():
            findings.extend(
                validate_importances(session.importances[eid], path=f"importances.{eid}")
            )

    cids = session.criterion_ids()
    by_cell: dict[tuple[str, str], dict[str, Grade]] = {}
    for (pid, eid, cid), grade in session.scores.items():
        by_cell.setdefault((pid, eid), {})[cid] = grade

    unit_scores: dict[tuple[str, str], Grade] = {}
    for pid in session.proposal_ids():
        for eid in session.expert_ids():
            vector = CriterionVector(
                scale=session.scale,
                criterion_ids=cids,
                importances=session.importances_for(eid),
                scores=by_cell.get((pid, eid), {}),
            )
            unit_scores[(pid, eid)] = unit_score(vector, lenient=session.lenient)

    overall: dict[str, Grade] = {}
    witness: dict[str, Witness] = {}
    for pid in session.proposal_ids():
        per_expert = {eid: unit_scores[(pid, eid)] for eid in session.expert_ids()}
        overall[pid], witness[pid] = aggregate_witness(per_expert, q)

    ranking = _rank(overall)
    return EvaluationReport(
        unit_scores=unit_scores,
        overall=overall,
        witness=witness,
        ranking=ranking,
        findings=tuple(findings),
    )


def _rank(overall: Mapping[str, Grade]) -> tuple[RankGroup, ...]:
    by_grade: dict[int, list[str]] = {}
    grades: dict[int, Grade] = {}
    for pid, grade in overall.items():
        by_grade.setdefault(grade.index, []).append(pid)
        grades[grade.index] = grade
    groups = []
    for rank, index in enumerate(sorted(by_grade, reverse=True), start=1):
        groups.append(
            RankGroup(rank=rank, grade=grades[index], proposals=tuple(sorted(by_grade[index])))
        )
    return tuple(groups)


def rank_of(report: EvaluationReport, proposal_id: str) -> int:
    """The 1-based rank group a proposal landed in."""
    for group in report.ranking:
        if proposal_id in group.proposals:
            return group.rank
    raise KeyError(proposal_id)


def report_to_json(report: EvaluationReport) -> dict:
    """A deterministic JSON-ready view of a report; grades appear as labels."""
    return {
        "unit_scores": [
            {"proposal": pid, "expert": eid, "grade": report.unit_scores[(pid, eid)].label}
            for pid, eid in sorted(report.unit_scores)
        ],
        "overall": [
            {
                "proposal": pid,
                "grade": report.overall[pid].label,
                "witness": {
                    "position": report.witness[pid].position,
                    "satisfaction": report.witness[pid].satisfaction.label,
                    "score": report.witness[pid].score.label,
                    "expert": report.witness[pid].expert,
                },
            }
            for pid in sorted(report.overall)
        ],
        "ranking": [
            {"rank": g.rank, "grade": g.grade.label, "proposals": list(g.proposals)}
            for g in report.ranking
        ],
        "findings": [
            {"severity": f.severity, "code": f.code, "message": f.message, "path": f.path}
            for f in report.findings
        ],
    }


def witness_text(w: Witness) -> str:
    return f"j*={w.position}, Q={w.satisfaction.label}, B={w.score.label}"


def report_to_text(report: EvaluationReport) -> str:
    """A plain-text ranking table."""
    rows = []
    for group in report.ranking:
        for pid in group.proposals:
            w = report.witness[pid]
            rows.append((str(group.rank), pid, group.grade.label, witness_text(w)))
    header = ("rank", "proposal", "overall", "witness")
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i]) for i in range(4)]
    lines = [
        "  ".join(header[i].ljust(widths[i]) for i in range(4)),
        "  ".join("-" * widths[i] for i in range(4)),
    ]
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(4)))
    if not rows:
        lines.append("(no proposals)")
    for f in report.findings:
        lines.append(f"{f.severity}: {f.message}" + (f" [{f.path}]" if f.path else ""))
    return "\n".join(lines)
