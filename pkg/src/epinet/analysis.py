"""Centrality-vs-knowledge correlations and clique-vs-network belief coherence.

Coherence uses only what agents reported (answers and marks); accuracy
measures compare predictions with other agents' reports, and level-1
accuracy compares answers with the answer key.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DataError
from .socnet import (
    KINDS,
    TieNetwork,
    betweenness_centrality,
    degree_centrality,
    eigenvector_centrality,
    maximal_cliques,
)
from .survey import SurveyBundle

MEASURES = ("betweenness", "degree", "eigenvector")
ABSENCE_MODES = ("default", "forced-binary")


def mean_defined(values: Iterable[Optional[float]]) -> Optional[float]:
    vals = [v for v in values if v is not None]
    if not vals:
        return None
    return math.fsum(vals) / len(vals)


def _check_mode(mode: str) -> None:
    if mode not in ABSENCE_MODES:
        raise ValueError(f"absence mode must be one of {ABSENCE_MODES}, got {mode!r}")


# -- pairwise matching and coherence ---------------------------------------


def pair_match_levels(bundle: SurveyBundle, a: str, b: str, stmt: str) -> int:
    """Highest cumulative match level 0..3 of two agents on one statement.

    1: same answer. 2: additionally each '1'-marked the other. 3: additionally
    each '2'-marked the other, which the other's '1' mark confirms.
    """
    ans_a, ans_b = bundle.answer(a, stmt), bundle.answer(b, stmt)
    if ans_a is None or ans_b is None:
        raise DataError(f"{a!r} and {b!r} must both answer {stmt!r}")
    if ans_a != ans_b:
        return 0
    if not (bundle.marked(a, b, stmt, "1") and bundle.marked(b, a, stmt, "1")):
        return 1
    if not (bundle.marked(a, b, stmt, "2") and bundle.marked(b, a, stmt, "2")):
        return 2
    return 3


@dataclass(frozen=True)
class CoherenceRow:
    label: str
    members: tuple
    pairs: int
    per_statement: Mapping  # stmt -> float | None
    overall: Optional[float]


def _pair_scores(bundle: SurveyBundle, members: Sequence[str], stmt: str) -> list:
    scores = []
    for a, b in itertools.combinations(members, 2):
        if bundle.answer(a, stmt) is None or bundle.answer(b, stmt) is None:
            continue
        scores.append(pair_match_levels(bundle, a, b, stmt) / 3)
    return scores


def coherence(bundle: SurveyBundle, members: Iterable[str], statements: Sequence[str], label: str = "") -> CoherenceRow:
    """Mean pairwise match level (as a fraction of 3) per statement.

    Pairs where either member skipped the statement are left out; a statement
    with no answering pair is undefined.
    """
    members = tuple(sorted(set(members)))
    if len(members) < 2:
        raise DataError("coherence needs at least two members")
    if not statements:
        raise DataError("no statements selected")
    per = {s: mean_defined(_pair_scores(bundle, members, s)) for s in statements}
    return CoherenceRow(label, members, math.comb(len(members), 2), per, mean_defined(per.values()))


def binomial_baseline(bundle: SurveyBundle, stmt: str) -> float:
    """Expected level-1 agreement of a random pair if answers were independent draws."""
    answers = [bundle.answer(r, stmt) for r in bundle.answered(stmt)]
    if not answers:
        raise DataError(f"nobody answered {stmt!r}")
    # exact arithmetic so p = 0.8 gives 0.68, not 0.6800000000000002
    p = Fraction(answers.count("T"), len(answers))
    return float(p * p + (1 - p) * (1 - p))


@dataclass(frozen=True)
class CliqueRow:
    network: str
    row: CoherenceRow
    delta: Mapping  # stmt | "overall" -> float | None


@dataclass(frozen=True)
class CoherenceTable:
    statements: tuple
    network: CoherenceRow
    baseline: Mapping  # stmt -> float | None
    cliques: tuple  # of CliqueRow


def _delta(x: Optional[float], y: Optional[float]) -> Optional[float]:
    return None if x is None or y is None else x - y


def clique_coherence_table(bundle: SurveyBundle, networks: Mapping[str, TieNetwork], statements: Sequence[str]) -> CoherenceTable:
    if not statements:
        raise DataError("no statements selected")
    statements = tuple(statements)
    whole = coherence(bundle, bundle.respondents, statements, label="all")
    baseline = {}
    for s in statements:
        baseline[s] = binomial_baseline(bundle, s) if bundle.answered(s) else None
    rows = []
    for kind in KINDS:
        if kind not in networks:
            continue
        for clique in maximal_cliques(networks[kind]):
            row = coherence(bundle, clique, statements, label=kind)
            delta = {s: _delta(row.per_statement[s], whole.per_statement[s]) for s in statements}
            delta["overall"] = _delta(row.overall, whole.overall)
            rows.append(CliqueRow(kind, row, delta))
    return CoherenceTable(statements, whole, baseline, tuple(rows))


# -- accuracy --------------------------------------------------------------


def level1_accuracy(bundle: SurveyBundle, key: Mapping, agent: str, stmt: str) -> Optional[float]:
    answer = bundle.answer(agent, stmt)
    if answer is None or stmt not in key:
        return None
    return 1.0 if answer == key[stmt] else 0.0


def _others(bundle: SurveyBundle, agent: str, stmt: str) -> list:
    return [b for b in bundle.answered(stmt) if b != agent]


def level2_accuracy(bundle: SurveyBundle, agent: str, stmt: str, mode: str = "default") -> Optional[float]:
    """Share of correct predictions of other agents' answers.

    A '1' mark predicts agreement; in forced-binary mode no mark predicts
    disagreement, otherwise unmarked agents are skipped.
    """
    _check_mode(mode)
    mine = bundle.answer(agent, stmt)
    if mine is None:
        raise DataError(f"{agent!r} did not answer {stmt!r}")
    hits = total = 0
    for b in _others(bundle, agent, stmt):
        if bundle.marked(agent, b, stmt, "1"):
            predicted_same = True
        elif mode == "forced-binary":
            predicted_same = False
        else:
            continue
        total += 1
        hits += predicted_same == (bundle.answer(b, stmt) == mine)
    return hits / total if total else None


def level3_accuracy(bundle: SurveyBundle, agent: str, stmt: str, mode: str = "default") -> Optional[float]:
    """Share of correct predictions of who knows the agent's own answer.

    B counts as knowing it when B '1'-marked the agent and answered the same.
    """
    _check_mode(mode)
    mine = bundle.answer(agent, stmt)
    if mine is None:
        raise DataError(f"{agent!r} did not answer {stmt!r}")
    hits = total = 0
    for b in _others(bundle, agent, stmt):
        if bundle.marked(agent, b, stmt, "2"):
            predicted = True
        elif mode == "forced-binary":
            predicted = False
        else:
            continue
        knows = bundle.marked(b, agent, stmt, "1") and bundle.answer(b, stmt) == mine
        total += 1
        hits += predicted == knows
    return hits / total if total else None


@dataclass(frozen=True)
class AccuracyTable:
    statements: tuple
    level2: Mapping  # agent -> stmt -> float | None
    level3: Mapping
    overall2: Mapping  # agent -> float | None
    overall3: Mapping


def accuracy_table(bundle: SurveyBundle, statements: Sequence[str], mode: str = "default") -> AccuracyTable:
    l2, l3 = {}, {}
    for a in bundle.respondents:
        l2[a], l3[a] = {}, {}
        for s in statements:
            answered = bundle.answer(a, s) is not None
            l2[a][s] = level2_accuracy(bundle, a, s, mode) if answered else None
            l3[a][s] = level3_accuracy(bundle, a, s, mode) if answered else None
    return AccuracyTable(
        tuple(statements),
        l2,
        l3,
        {a: mean_defined(l2[a].values()) for a in l2},
        {a: mean_defined(l3[a].values()) for a in l3},
    )


# -- correlation -----------------------------------------------------------


def pearson(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Sample product-moment correlation; None when either vector is constant."""
    if len(x) != len(y):
        raise ValueError("vectors must have equal length")
    n = len(x)
    if n < 2:
        return None
    mx, my = math.fsum(x) / n, math.fsum(y) / n
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        return None
    # values that differ only by rounding of the mean count as constant
    if max(map(abs, dx)) <= 1e-12 * max(1.0, abs(mx)) or max(map(abs, dy)) <= 1e-12 * max(1.0, abs(my)):
        return None
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def centrality_table(networks: Mapping[str, TieNetwork]) -> dict:
    """kind -> measure -> agent -> value."""
    out = {}
    for kind in KINDS:
        net = networks[kind]
        out[kind] = {
            "betweenness": betweenness_centrality(net),
            "degree": degree_centrality(net),
            "eigenvector": eigenvector_centrality(net) if net.nodes else {},
        }
    return out


@dataclass(frozen=True)
class CorrelationRow:
    network: str
    measure: str
    level2: Mapping  # stmt | "overall" -> float | None
    level3: Mapping


def _correlate(centrality: Mapping[str, float], accuracy: Mapping[str, Optional[float]]) -> Optional[float]:
    agents = sorted(a for a, v in accuracy.items() if v is not None)
    return pearson([float(centrality[a]) for a in agents], [accuracy[a] for a in agents])


def centrality_knowledge_table(
    bundle: SurveyBundle,
    networks: Mapping[str, TieNetwork],
    statements: Sequence[str],
    mode: str = "default",
) -> list:
    """Correlation across respondents of each centrality measure with level-2 and
    level-3 accuracy, per statement and for per-agent mean accuracy ("overall")."""
    if not statements:
        raise DataError("no statements selected")
    acc = accuracy_table(bundle, statements, mode)
    cent = centrality_table(networks)
    rows = []
    for kind in KINDS:
        for measure in MEASURES:
            c = cent[kind][measure]
            l2 = {s: _correlate(c, {a: acc.level2[a][s] for a in acc.level2}) for s in statements}
            l3 = {s: _correlate(c, {a: acc.level3[a][s] for a in acc.level3}) for s in statements}
            l2["overall"] = _correlate(c, acc.overall2)
            l3["overall"] = _correlate(c, acc.overall3)
            rows.append(CorrelationRow(kind, measure, l2, l3))
    return rows
