"""Aggregation quantifiers: how many satisfied experts satisfy the decision maker.

A quantifier is a table Q(0..r) of grades, nondecreasing in the number of
agreeing experts and reaching the top grade at Q(r).  Q(0) is stored for
completeness but aggregation only consults Q(1..r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadExpertCountError,
    BadThresholdError,
    NotMonotoneError,
    ScaleMismatchError,
    TopNotPerfectError,
)
from .scale import Grade, OrdinalScale


@dataclass(frozen=True)
class Quantifier:
    """A table of grades Q(0), Q(1), ..., Q(r) bound to one scale.

    ``name`` is a display tag only and does not take part in equality:
    at-least with m = 1 *is* the any-quantifier.
    """

    values: tuple[Grade, ...]
    name: str = field(default="custom", compare=False)

    def __post_init__(self) -> None:
        values = tuple(self.values)
        if len(values) < 2:
            raise BadExpertCountError("a quantifier needs at least one expert (r >= 1)")
        scale = values[0].scale
        for g in values[1:]:
            if g.scale != scale:
                raise ScaleMismatchError("quantifier values must share one scale")
        for lower, higher in zip(values, values[1:]):
            if higher.index < lower.index:
                raise NotMonotoneError(
                    f"quantifier must be nondecreasing; {higher.label!r} follows {lower.label!r}"
                )
        if values[-1].index != scale.n:
            raise TopNotPerfectError(
                f"quantifier must end at the top grade, got {values[-1].label!r}"
            )
        object.__setattr__(self, "values", values)

    @property
    def r(self) -> int:
        """Expert count this quantifier is built for."""
        return len(self.values) - 1

    @property
    def scale(self) -> OrdinalScale:
        return self.values[0].scale

    def at(self, i: int) -> Grade:
        """Q(i) for i in 0..r."""
        if not 0 <= i <= self.r:
            raise IndexError(f"quantifier index {i} outside 0..{self.r}")
        return self.values[i]


def _check_expert_count(r: int) -> None:
    if r < 1:
        raise BadExpertCountError(f"expert count must be at least 1, got {r}")


def q_all(r: int, scale: OrdinalScale) -> Quantifier:
    """Satisfied only when every expert is: bottom below r, top at r."""
    _check_expert_count(r)
    return Quantifier((scale.bottom,) * r + (scale.top,), name="all")


def q_any(r: int, scale: OrdinalScale) -> Quantifier:
    """One supporting expert is enough: top from the first expert on."""
    _check_expert_count(r)
    return Quantifier((scale.bottom,) + (scale.top,) * r, name="any")


def q_at_least(m: int, r: int, scale: OrdinalScale) -> Quantifier:
    """Top once m experts agree, bottom before that."""
    _check_expert_count(r)
    if not 1 <= m <= r:
        raise BadThresholdError(f"threshold m={m} outside 1..{r}")
    return Quantifier(
        (scale.bottom,) * m + (scale.top,) * (r - m + 1), name="at-least-m"
    )


def q_average(r: int, scale: OrdinalScale) -> Quantifier:
    """The average-emulating quantifier.

    Q(k) sits at scale position round_half_up(1 + k * (n - 1) / r), which
    climbs evenly from the bottom grade at k = 0 to the top grade at k = r.
    Exact halves round up; the rounding is done in exact rational
    arithmetic, never floats.
    """
    _check_expert_count(r)
    n = scale.n
    values = []
    for k in range(r + 1):
        position = 1 + Fraction(k * (n - 1), r)
        values.append(Grade(scale, math.floor(position + Fraction(1, 2))))
    return Quantifier(tuple(values), name="average")


def q_custom(values: Sequence[Grade], name: str = "custom") -> Quantifier:
    """A caller-supplied table Q(0..r); validated like every quantifier."""
    return Quantifier(tuple(values), name=name)
