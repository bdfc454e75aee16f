"""Ordered weighted aggregation of per-expert unit scores."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyInputError, LengthMismatchError, ScaleMismatchError
from .quantifier import Quantifier
from .scale import Grade, gmin


@dataclass(frozen=True)
class OrderedScores:
    """Unit scores sorted best-first, with the contributing expert per slot.

    Ties keep ascending expert-id order so provenance is deterministic.
    """

    descending: tuple[Grade, ...]
    provenance: tuple[str, ...]

    def __post_init__(self) -> None:
        descending = tuple(self.descending)
        provenance = tuple(self.provenance)
        if not descending:
            raise EmptyInputError("at least one score is required")
        if len(descending) != len(provenance):
            raise ValueError("provenance must name one expert per score")
        scale = descending[0].scale
        for g in descending[1:]:
            if g.scale != scale:
                raise ScaleMismatchError("ordered scores must share one scale")
        for better, worse in zip(descending, descending[1:]):
            if worse.index > better.index:
                raise ValueError("scores must be nonincreasing")
        object.__setattr__(self, "descending", descending)
        object.__setattr__(self, "provenance", provenance)

    def __len__(self) -> int:
        return len(self.descending)


@dataclass(frozen=True)
class Witness:
    """The position that decided an aggregate: the smallest j maximizing Q(j) ^ B_j."""

    position: int
    satisfaction: Grade
    score: Grade
    expert: str


def order_scores(unit_scores: Mapping[str, Grade]) -> OrderedScores:
    """Sort expert unit scores best-first; ties in ascending expert-id order."""
    if not unit_scores:
        raise EmptyInputError("no expert scores to order")
    ranked = sorted(unit_scores.items(), key=lambda item: (-item[1].index, item[0]))
    return OrderedScores(
        descending=tuple(grade for _, grade in ranked),
        provenance=tuple(expert for expert, _ in ranked),
    )


def owa_witness(ordered: OrderedScores, q: Quantifier) -> tuple[Grade, Witness]:
    """Aggregate and report which position produced the result.

    The aggregate is the maximum over j = 1..r of ``gmin(Q(j), B_j)``;
    among tying positions the smallest j wins.
    """
    if len(ordered) != q.r:
        raise LengthMismatchError(
            f"{len(ordered)} scores cannot be aggregated by a quantifier for r={q.r}"
        )
    if ordered.descending[0].scale != q.scale:
        raise ScaleMismatchError("scores and quantifier must share one scale")
    best: Grade | None = None
    best_j = 0
    for j in range(1, q.r + 1):
        term = gmin(q.at(j), ordered.descending[j - 1])
        if best is None or term.index > best.index:
            best = term
            best_j = j
    assert best is not None
    return best, Witness(
        position=best_j,
        satisfaction=q.at(best_j),
        score=ordered.descending[best_j - 1],
        expert=ordered.provenance[best_j - 1],
    )


def owa(ordered: OrderedScores, q: Quantifier) -> Grade:
    """The fused overall grade Max_j [Q(j) ^ B_j]."""
    return owa_witness(ordered, q)[0]


def aggregate(unit_scores: Mapping[str, Grade], q: Quantifier) -> Grade:
    """Order the unit scores, then aggregate them under the quantifier."""
    return owa(order_scores(unit_scores), q)


def aggregate_witness(unit_scores: Mapping[str, Grade], q: Quantifier) -> tuple[Grade, Witness]:
    return owa_witness(order_scores(unit_scores), q)
