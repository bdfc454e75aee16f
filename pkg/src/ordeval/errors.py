"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class OrdevalError(Exception):
    """Base class for every error raised by this package."""


class TooFewLabelsError(OrdevalError, ValueError):
    """A scale needs at least two labels."""


class DuplicateLabelError(OrdevalError, ValueError):
    """Two labels (or aliases) collide after trimming and case-folding."""


class UnknownLabelError(OrdevalError, ValueError):
    """A grade label that does not appear on the scale."""

    def __init__(self, text: str, labels: Sequence[str]) -> None:
        self.text = text
        self.labels = tuple(labels)
        super().__init__(
            f"unknown grade {text!r}; scale labels are: {', '.join(self.labels)}"
        )


class ScaleMismatchError(OrdevalError, ValueError):
    """An operation mixed grades from two different scales."""


class MissingScoreError(OrdevalError, LookupError):
    """A criterion has no score in strict mode."""


class MissingImportanceError(OrdevalError, LookupError):
    """A criterion has no importance grade."""


class UnknownCriterionError(OrdevalError, LookupError):
    """A grade was supplied for a criterion that is not part of the vector."""


class BadExpertCountError(OrdevalError, ValueError):
    """A quantifier needs at least one expert."""


class BadThresholdError(OrdevalError, ValueError):
    """The at-least threshold m must satisfy 1 <= m <= r."""


class NotMonotoneError(OrdevalError, ValueError):
    """Quantifier values must never decrease as more experts agree."""


class TopNotPerfectError(OrdevalError, ValueError):
    """A quantifier must reach the top grade when every expert agrees."""


class EmptyInputError(OrdevalError, ValueError):
    """At least one expert score is required for aggregation."""


class LengthMismatchError(OrdevalError, ValueError):
    """The number of ordered scores must equal the quantifier's expert count."""


@dataclass(frozen=True, slots=True)
class Problem:
    """One validation defect, located by a dotted/indexed path."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class ValidationError(OrdevalError, ValueError):
    """A document or session violates its invariants.

    Carries every detected violation, not just the first.
    """

    def __init__(self, problems: Iterable[Problem]) -> None:
        self.problems = tuple(problems)
        summary = "; ".join(str(p) for p in self.problems) or "invalid"
        super().__init__(summary)


class ParseError(OrdevalError, ValueError):
    """The raw bytes are not a well-formed session document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class InvalidPatchError(OrdevalError, ValueError):
    """A what-if patch references unknown ids or off-scale grades."""

    def __init__(self, problems: Iterable[Problem]) -> None:
        self.problems = tuple(problems)
        summary = "; ".join(str(p) for p in self.problems) or "invalid patch"
        super().__init__(summary)


class StaleVersionError(OrdevalError):
    """An edit was based on a version token that is no longer current."""

    def __init__(self, sent: int, current: int) -> None:
        self.sent = sent
        self.current = current
        super().__init__(f"version token {sent} is stale; current version is {current}")
