"""Per-expert unit scoring of one alternative across weighted criteria.

The unit score starts from the top grade and is pulled down by each
criterion, but never below ``neg(importance) | score`` for that
criterion: unimportant criteria cannot hurt much.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    MissingImportanceError,
    MissingScoreError,
    ScaleMismatchError,
    UnknownCriterionError,
)
from .scale import Grade, OrdinalScale, gmax, gmin, neg


@dataclass(frozen=True)
class ValidationFinding:
    """A non-blocking observation about the inputs."""

    severity: str
    code: str
    message: str
    path: str = ""


@dataclass(frozen=True)
class CriterionVector:
    """One expert's scores plus criterion importances, all on one scale."""

    scale: OrdinalScale
    criterion_ids: tuple[str, ...]
    importances: Mapping[str, Grade]
    scores: Mapping[str, Grade]

    def __post_init__(self) -> None:
        ids = tuple(self.criterion_ids)
        if len(set(ids)) != len(ids):
            raise ValueError("criterion ids must be distinct")
        known = set(ids)
        importances = dict(self.importances)
        scores = dict(self.scores)
        for name, mapping in ("importances", importances), ("scores", scores):
            for cid, grade in mapping.items():
                if cid not in known:
                    raise UnknownCriterionError(f"{name}[{cid!r}] is not a listed criterion")
                if grade.scale != self.scale:
                    raise ScaleMismatchError(
                        f"{name}[{cid!r}] grade {grade.label!r} is not on the vector's scale"
                    )
        object.__setattr__(self, "criterion_ids", ids)
        object.__setattr__(self, "importances", importances)
        object.__setattr__(self, "scores", scores)


def unit_score(v: CriterionVector, *, lenient: bool = False) -> Grade:
    """Fuse one expert's criterion scores into a single grade.

    Computes the minimum over criteria of ``gmax(neg(importance), score)``.
    An empty criterion set yields the top grade (the identity of min).
    In lenient mode criteria without a score are dropped from the minimum;
    strict mode (the default) raises instead.
    """
    result = v.scale.top
    for cid in v.criterion_ids:
        score = v.scores.get(cid)
        if score is None:
            if lenient:
                continue
            raise MissingScoreError(f"no score for criterion {cid!r}")
        importance = v.importances.get(cid)
        if importance is None:
            raise MissingImportanceError(f"no importance for criterion {cid!r}")
        result = gmin(result, gmax(neg(importance), score))
    return result


def validate_importances(
    importances: Mapping[str, Grade], path: str = "importances"
) -> list[ValidationFinding]:
    """Warn when no criterion carries the top importance grade.

    The method expects the most important criterion to be rated top;
    everything still evaluates without it, so this never blocks.
    """
    if any(g.index == g.scale.n for g in importances.values()):
        return []
    return [
        ValidationFinding(
            severity="warning",
            code="no-top-importance",
            message="no criterion has top importance; grade the most important criterion with the top grade",
            path=path,
        )
    ]
