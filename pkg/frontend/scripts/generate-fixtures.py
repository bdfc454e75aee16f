#!/usr/bin/env python3
"""Record engine outputs as JSON fixtures for the panel's contract-stub tests.

Run from the repository root after changing the engine or the tutorial
session:

    python3 frontend/scripts/generate-fixtures.py
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path

from ordeval import (
    Patch,
    QuantifierSpec,
    delta_to_json,
    evaluate,
    load_session,
    report_to_json,
    session_to_json,
    what_if,
)

ROOT = Path(__file__).resolve().parent.parent.parent
FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def dump(name: str, doc) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {name}")


def main() -> None:
    session = load_session((ROOT / "sessions" / "tutorial.json").read_bytes())
    dump("session.json", session_to_json(session))
    dump("report-base.json", report_to_json(evaluate(session)))

    lowered = what_if(session, Patch(importances={"c3": "Low"}))
    dump(
        "whatif-c3-low.json",
        {"report": report_to_json(lowered.report), "delta": delta_to_json(lowered.delta)},
    )

    any_quantifier = what_if(session, Patch(quantifier=QuantifierSpec(kind="any")))
    dump(
        "whatif-any.json",
        {"report": report_to_json(any_quantifier.report), "delta": delta_to_json(any_quantifier.delta)},
    )

    empty = dataclasses.replace(session, proposals=(), scores={}, notes={})
    dump("session-empty.json", session_to_json(empty))
    dump("report-empty.json", report_to_json(evaluate(empty)))


if __name__ == "__main__":
    main()
