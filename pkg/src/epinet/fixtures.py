"""Bundled datasets: the Alice/Bob interview epinet and a synthetic survey."""
from __future__ import annotations

import json
import random
from importlib import resources

from .core import Epinet, Proposition
from .formula import Truth, parse
from .survey import SurveyBundle, parse_survey_data

ROSTER = ("Abe", "Ben", "Cam", "Dan", "Eli", "Flo", "Gil", "Hal", "Ian", "Jan", "Kim")
STATEMENTS = ("a", "b", "c", "d", "e")
ANSWER_KEY = {"a": "T", "b": "T", "c": "F", "d": "T", "e": "F"}
# the tight, confidently wrong interaction clique
WRONG_TRIAD = ("Dan", "Gil", "Kim")

ALICE_BOB_BELIEFS = (
    "Alice b p",
    "Bob b p",
    "Alice b Bob b q",
    "Bob b Alice b p",
    "Alice b Bob b Alice b q",
    "Bob b Alice b Bob b p",
    "Alice b q",
    "Bob b r",
)


def alice_bob() -> Epinet:
    """Two agents over three propositions; Alice confidently believes the false q."""
    net = Epinet.create(
        ["Alice", "Bob"],
        [
            Proposition("q", "Alice won the engineering contest in year X", Truth.FALSE, negation_of="p"),
            Proposition("p", "Alice did not win the engineering contest in year X", Truth.TRUE, negation_of="q"),
            Proposition("r", "Bob's son won the engineering contest in year X", Truth.TRUE),
        ],
    )
    net = net.assert_beliefs(parse(text) for text in ALICE_BOB_BELIEFS)
    return net.with_confidence("Alice", "q")


_EDGES = {
    "collaboration": "Abe-Cam Abe-Eli Cam-Eli Ben-Ian Eli-Ian Dan-Jan Hal-Ian Gil-Kim Cam-Flo",
    "friendship": "Abe-Ben Ben-Cam Dan-Gil Gil-Kim Dan-Kim Eli-Hal Ian-Jan Flo-Hal Abe-Jan Cam-Eli",
    "interaction": (
        "Abe-Cam Abe-Dan Abe-Eli Ben-Eli Ben-Ian Cam-Dan Cam-Eli Cam-Ian Dan-Gil Dan-Kim "
        "Gil-Kim Eli-Flo Eli-Gil Eli-Ian Hal-Ian Ian-Jan Jan-Kim Eli-Hal Gil-Jan"
    ),
}


def synthetic_survey_data(seed: int = 7) -> dict:
    """Generate the bundled 11-agent, 5-statement survey document.

    Statement ``a`` is answered T by everyone, so level-2 predictions about it
    are always right and its correlations are undefined. The WRONG_TRIAD
    answers b-e against the key and marks each other fully.
    """
    rng = random.Random(seed)
    q1 = {r: {} for r in ROSTER}
    for kind, text in _EDGES.items():
        for pair in text.split():
            u, v = pair.split("-")
            reporters = rng.choice([(u,), (v,), (u, v)])
            for rep in reporters:
                other = v if rep == u else u
                tie = {"collaboration": 1, "friendship": 4}.get(kind) or rng.choice([2, 3])
                q1[rep].setdefault(other, set()).add(tie)

    answers = {}
    for r in ROSTER:
        answers[r] = {}
        for s in STATEMENTS:
            truth = ANSWER_KEY[s]
            if s == "a":
                answers[r][s] = "T"
            elif r in WRONG_TRIAD:
                answers[r][s] = "F" if truth == "T" else "T"
            elif rng.random() < 0.75:
                answers[r][s] = truth
            else:
                answers[r][s] = "F" if truth == "T" else "T"
    del answers["Flo"]["e"]

    responses = []
    for r in ROSTER:
        q1_entry = {}
        for m in ROSTER:
            if m == r:
                continue
            col = sorted(x for x, p in (("1", 0.5), ("2", 0.3)) if rng.random() < p)
            ties = sorted(q1[r].get(m, ()))
            if ties or col:
                q1_entry[m] = {"ties": ties, "colA": col}
        q2_answers = {item: rng.choice(ROSTER) for item in ("2a", "2b", "2c")}
        q2_marks = {}
        q3_marks = {}
        for m in ROSTER:
            if m == r:
                continue
            items = {}
            for item in ("2a", "2b", "2c"):
                marks = sorted(x for x, p in (("1", 0.35), ("2", 0.2)) if rng.random() < p)
                if marks:
                    items[item] = marks
            if items:
                q2_marks[m] = items
            stmts = {}
            for s in STATEMENTS:
                if s not in answers[r]:
                    continue
                if r in WRONG_TRIAD and m in WRONG_TRIAD:
                    stmts[s] = ["1", "2"]
                    continue
                p1 = 0.55 if answers[m].get(s) == answers[r][s] else 0.25
                marks = sorted(x for x, p in (("1", p1), ("2", 0.3)) if rng.random() < p)
                if marks:
                    stmts[s] = marks
            if stmts:
                q3_marks[m] = stmts
        responses.append(
            {
                "respondent": r,
                "q1": q1_entry,
                "q2": {"answers": q2_answers, "marks": q2_marks},
                "q3": {"answers": answers[r], "marks": q3_marks},
            }
        )
    return {"roster": list(ROSTER), "responses": responses, "answer_key": dict(ANSWER_KEY)}


def data_path(name: str):
    return resources.files("epinet") / "data" / name


def synthetic_survey() -> SurveyBundle:
    with data_path("synthetic_survey.json").open(encoding="utf-8") as fh:
        return parse_survey_data(json.load(fh))
