"""Ordered linguistic scales and their max / min / negation algebra.

A scale is a finite, totally ordered list of verbal grade labels, worst
first.  Grades are positions on one specific scale; mixing grades from
two scales is a hard error rather than a silent index comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DuplicateLabelError,
    ScaleMismatchError,
    TooFewLabelsError,
    UnknownLabelError,
)


def _canon(text: str) -> str:
    return text.strip().casefold()


@dataclass(frozen=True, slots=True)
class OrdinalScale:
    """An ordered tuple of distinct grade labels; index 1 is worst, n is best.

    ``aliases`` holds one tuple of alternate spellings per label and may be
    left empty.  Labels and aliases must stay distinct after trimming and
    case-folding.
    """

    labels: tuple[str, ...]
    aliases: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self) -> None:
        labels = tuple(str(label) for label in self.labels)
        if len(labels) < 2:
            raise TooFewLabelsError(f"a scale needs at least 2 labels, got {len(labels)}")
        aliases = tuple(tuple(str(a) for a in alts) for alts in self.aliases)
        if not aliases:
            aliases = tuple(() for _ in labels)
        if len(aliases) != len(labels):
            raise ValueError("aliases must carry exactly one entry per label")
        seen: set[str] = set()
        for name in (*labels, *(a for alts in aliases for a in alts)):
            key = _canon(name)
            if not key:
                raise ValueError("scale labels must be non-empty")
            if key in seen:
                raise DuplicateLabelError(f"label {name!r} repeats on the scale")
            seen.add(key)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "aliases", aliases)

    def __repr__(self) -> str:
        return f"OrdinalScale({' < '.join(self.labels)})"

    @property
    def n(self) -> int:
        """Number of grades on the scale."""
        return len(self.labels)

    def grade(self, index: int) -> "Grade":
        """The grade at a 1-based position."""
        return Grade(self, index)

    @property
    def bottom(self) -> "Grade":
        return Grade(self, 1)

    @property
    def top(self) -> "Grade":
        return Grade(self, self.n)


@dataclass(frozen=True, slots=True)
class Grade:
    """One position on a specific scale.

    Grades compare only against grades of the same scale; ``<`` and
    friends raise :class:`ScaleMismatchError` otherwise.  Equality across
    scales is simply ``False``.
    """

    scale: OrdinalScale
    index: int

    def __post_init__(self) -> None:
        if not isinstance(self.index, int) or isinstance(self.index, bool):
            raise ValueError(f"grade index must be an integer, got {self.index!r}")
        if not 1 <= self.index <= self.scale.n:
            raise ValueError(f"grade index {self.index} outside 1..{self.scale.n}")

    @property
    def label(self) -> str:
        return self.scale.labels[self.index - 1]

    def __repr__(self) -> str:
        return f"Grade({self.label!r}, {self.index}/{self.scale.n})"

    def _require_same_scale(self, other: "Grade") -> None:
        if self.scale != other.scale:
            raise ScaleMismatchError(
                f"cannot compare {self.label!r} with {other.label!r}: different scales"
            )

    def __lt__(self, other: "Grade") -> bool:
        if not isinstance(other, Grade):
            return NotImplemented
        self._require_same_scale(other)
        return self.index < other.index

    def __le__(self, other: "Grade") -> bool:
        if not isinstance(other, Grade):
            return NotImplemented
        self._require_same_scale(other)
        return self.index <= other.index

    def __gt__(self, other: "Grade") -> bool:
        if not isinstance(other, Grade):
            return NotImplemented
        self._require_same_scale(other)
        return self.index > other.index

    def __ge__(self, other: "Grade") -> bool:
        if not isinstance(other, Grade):
            return NotImplemented
        self._require_same_scale(other)
        return self.index >= other.index


_SCALE7 = OrdinalScale(
    labels=("None", "Very Low", "Low", "Medium", "High", "Very High", "Perfect"),
    aliases=(("N",), ("VL",), ("L",), ("M",), ("H",), ("VH",), ("P",)),
)


def default_scale7() -> OrdinalScale:
    """The standard seven-point scale from None up to Perfect."""
    return _SCALE7


def make_scale(labels: Sequence[str], aliases: Sequence[Sequence[str]] | None = None) -> OrdinalScale:
    """Build a scale from labels listed in ascending desirability."""
    return OrdinalScale(tuple(labels), tuple(tuple(a) for a in aliases) if aliases else ())


def parse_grade(scale: OrdinalScale, text: str) -> Grade:
    """Resolve a label or alias, case-insensitively and ignoring whitespace."""
    wanted = _canon(str(text))
    for i, (label, alts) in enumerate(zip(scale.labels, scale.aliases), start=1):
        if wanted == _canon(label) or any(wanted == _canon(a) for a in alts):
            return Grade(scale, i)
    raise UnknownLabelError(str(text), scale.labels)


def gmax(a: Grade, b: Grade) -> Grade:
    """The better of two grades on one scale."""
    a._require_same_scale(b)
    return a if a.index >= b.index else b


def gmin(a: Grade, b: Grade) -> Grade:
    """The worse of two grades on one scale."""
    a._require_same_scale(b)
    return a if a.index <= b.index else b


def neg(g: Grade) -> Grade:
    """Order-reversing negation: position i maps to n - i + 1."""
    return Grade(g.scale, g.scale.n - g.index + 1)
