"""Independent oracles and small-session builders used across the tests.

The oracle functions work on plain integers (1 = worst grade, n = best)
and never touch the package's own grade machinery, so they can sit on the
other side of every equivalence check.
"""

from __future__ import annotations

import random
from typing import Sequence

from ordeval import (
    Criterion,
    Expert,
    Grade,
    OrdinalScale,
    Proposal,
    QuantifierSpec,
    Session,
)


def oracle_neg(n: int, i: int) -> int:
    return n - i + 1


def oracle_unit(n: int, importances: Sequence[int], scores: Sequence[int]) -> int:
    if not importances:
        return n
    return min(max(n - imp + 1, sc) for imp, sc in zip(importances, scores))


def oracle_quantifier(kind: str, r: int, n: int, m: int | None = None,
                      custom: Sequence[int] | None = None) -> list[int]:
    """Q(0..r) as integers, derived straight from the definitions."""
    if kind == "all":
        return [1] * r + [n]
    if kind == "any":
        return [1] + [n] * r
    if kind == "at-least":
        assert m is not None
        return [1] * m + [n] * (r - m + 1)
    if kind == "average":
        # round-half-up of (r + k*(n-1)) / r, done in integer arithmetic
        table = []
        for k in range(r + 1):
            p, q = r + k * (n - 1), r
            table.append((2 * p + q) // (2 * q))
        return table
    assert custom is not None
    return list(custom)


def oracle_owa(q_table: Sequence[int], units: Sequence[int]) -> int:
    ordered = sorted(units, reverse=True)
    return max(min(q_table[j], ordered[j - 1]) for j in range(1, len(ordered) + 1))


SCALE3 = OrdinalScale(("bad", "ok", "good"))


def grid_session(
    scale: OrdinalScale,
    importances: dict,
    scores: dict[tuple[str, str, str], Grade],
    quantifier: QuantifierSpec,
    proposals: Sequence[str],
    experts: Sequence[str],
    criteria: Sequence[str],
    mode: str = "global",
    notes: dict | None = None,
    lenient: bool = False,
) -> Session:
    return Session(
        scale=scale,
        criteria=tuple(Criterion(id=c) for c in criteria),
        experts=tuple(Expert(id=e) for e in experts),
        proposals=tuple(Proposal(id=p) for p in proposals),
        importance_mode=mode,
        importances=importances,
        quantifier=quantifier,
        scores=scores,
        notes=notes or {},
        lenient=lenient,
    )


def random_quantifier_spec(rng: random.Random, r: int, scale: OrdinalScale) -> QuantifierSpec:
    kind = rng.choice(("all", "any", "at-least", "average", "custom"))
    if kind == "at-least":
        return QuantifierSpec(kind="at-least", m=rng.randint(1, r))
    if kind == "custom":
        body = sorted(rng.randint(1, scale.n) for _ in range(r))
        values = tuple(scale.labels[i - 1] for i in body[:-1]) + (scale.labels[-1],)
        if len(values) != r + 1:
            values = (scale.labels[0],) * (r + 1 - len(values)) + values
        return QuantifierSpec(kind="custom", values=values)
    return QuantifierSpec(kind=kind)


def random_session(rng: random.Random, scale: OrdinalScale = SCALE3,
                   max_proposals: int = 2, max_experts: int = 3,
                   max_criteria: int = 3) -> Session:
    proposals = [f"p{i}" for i in range(1, rng.randint(1, max_proposals) + 1)]
    experts = [f"e{i}" for i in range(1, rng.randint(1, max_experts) + 1)]
    criteria = [f"c{i}" for i in range(1, rng.randint(1, max_criteria) + 1)]
    mode = rng.choice(("global", "per-expert"))

    def vector() -> dict[str, Grade]:
        return {c: Grade(scale, rng.randint(1, scale.n)) for c in criteria}

    importances = vector() if mode == "global" else {e: vector() for e in experts}
    scores = {
        (p, e, c): Grade(scale, rng.randint(1, scale.n))
        for p in proposals
        for e in experts
        for c in criteria
    }
    return grid_session(
        scale=scale,
        importances=importances,
        scores=scores,
        quantifier=random_quantifier_spec(rng, len(experts), scale),
        proposals=proposals,
        experts=experts,
        criteria=criteria,
        mode=mode,
    )


def oracle_report(session: Session) -> dict:
    """Recompute both stages from the raw grid with integer arithmetic."""
    n = session.scale.n
    criteria = [c.id for c in session.criteria]
    experts = [e.id for e in session.experts]
    spec = session.quantifier
    custom = None
    if spec.kind == "custom":
        custom = []
        for v in spec.values:
            wanted = v.strip().casefold()
            for i, (label, alts) in enumerate(zip(session.scale.labels, session.scale.aliases), start=1):
                if wanted == label.strip().casefold() or any(wanted == a.strip().casefold() for a in alts):
                    custom.append(i)
                    break
    q_table = oracle_quantifier(spec.kind, len(experts), n, m=spec.m, custom=custom)

    units: dict[tuple[str, str], int] = {}
    for p in [x.id for x in session.proposals]:
        for e in experts:
            if session.importance_mode == "global":
                imp = [session.importances[c].index for c in criteria]
            else:
                imp = [session.importances[e][c].index for c in criteria]
            sc = [session.scores[(p, e, c)].index for c in criteria]
            units[(p, e)] = oracle_unit(n, imp, sc)
    overall = {
        p: oracle_owa(q_table, [units[(p, e)] for e in experts])
        for p in [x.id for x in session.proposals]
    }
    return {"units": units, "overall": overall}
