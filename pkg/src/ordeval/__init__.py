"""Ordinal multi-criteria / multi-expert evaluation.

Scores, importances, and aggregation targets all live on a finite
linguistic scale; no numbers are invented anywhere.  Per-expert unit
scores come from importance-weighted min/max fusion, and a
quantifier-guided ordered weighted aggregation fuses the experts into one
overall grade per proposal.
"""

from .errors import (
    BadExpertCountError,
    BadThresholdError,
    DuplicateLabelError,
    EmptyInputError,
    InvalidPatchError,
    LengthMismatchError,
    MissingImportanceError,
    MissingScoreError,
    NotMonotoneError,
    OrdevalError,
    ParseError,
    Problem,
    ScaleMismatchError,
    StaleVersionError,
    TooFewLabelsError,
    TopNotPerfectError,
    UnknownCriterionError,
    UnknownLabelError,
    ValidationError,
)
from .owa import OrderedScores, Witness, aggregate, aggregate_witness, order_scores, owa, owa_witness
from .quantifier import Quantifier, q_all, q_any, q_at_least, q_average, q_custom
from .scale import Grade, OrdinalScale, default_scale7, gmax, gmin, make_scale, neg, parse_grade
from .session import (
    Criterion,
    EvaluationReport,
    Expert,
    Proposal,
    QuantifierSpec,
    RankGroup,
    Session,
    evaluate,
    rank_of,
    report_to_json,
    report_to_text,
)
from .storage import load_session, save_session, session_from_json, session_to_json
from .unit import CriterionVector, ValidationFinding, unit_score, validate_importances
from .whatif import (
    OverallChange,
    Patch,
    RankDelta,
    ScoreEdit,
    UnitChange,
    WhatIfResult,
    apply_patch,
    delta_to_json,
    delta_to_text,
    diff_reports,
    parse_patch,
    what_if,
)

__all__ = [
    "OrdinalScale",
    "Grade",
    "default_scale7",
    "make_scale",
    "parse_grade",
    "gmax",
    "gmin",
    "neg",
    "CriterionVector",
    "ValidationFinding",
    "unit_score",
    "validate_importances",
    "Quantifier",
    "q_all",
    "q_any",
    "q_at_least",
    "q_average",
    "q_custom",
    "OrderedScores",
    "Witness",
    "order_scores",
    "owa",
    "owa_witness",
    "aggregate",
    "aggregate_witness",
    "Criterion",
    "Expert",
    "Proposal",
    "QuantifierSpec",
    "Session",
    "EvaluationReport",
    "RankGroup",
    "evaluate",
    "rank_of",
    "report_to_json",
    "report_to_text",
    "load_session",
    "save_session",
    "session_from_json",
    "session_to_json",
    "Patch",
    "ScoreEdit",
    "OverallChange",
    "UnitChange",
    "RankDelta",
    "WhatIfResult",
    "parse_patch",
    "apply_patch",
    "what_if",
    "diff_reports",
    "delta_to_json",
    "delta_to_text",
    "OrdevalError",
    "Problem",
    "TooFewLabelsError",
    "DuplicateLabelError",
    "UnknownLabelError",
    "ScaleMismatchError",
    "MissingScoreError",
    "MissingImportanceError",
    "UnknownCriterionError",
    "BadExpertCountError",
    "BadThresholdError",
    "NotMonotoneError",
    "TopNotPerfectError",
    "EmptyInputError",
    "LengthMismatchError",
    "ValidationError",
    "ParseError",
    "InvalidPatchError",
    "StaleVersionError",
]
