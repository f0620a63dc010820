"""Questionnaire ingestion and compilation into tie networks and epinets.

The input is a JSON transcription of a filled-in questionnaire::

    {"roster": [...],
     "responses": [{"respondent": "Abe",
                    "q1": {"Ben": {"ties": [1, 3], "colA": ["1"]}},
                    "q2": {"answers": {"2a": "Eli"}, "marks": {"Ben": {"2a": ["1", "2"]}}},
                    "q3": {"answers": {"a": "T"}, "marks": {"Ben": {"a": ["2"]}}}}],
     "answer_key": {"a": "T"}}

Mark '1' on a member means "would answer as I did"; mark '2' means "knows
how I answered". Absence of a mark is absence of a prediction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

import jsonschema

from .core import Epinet, Proposition
from .errors import DataError, SchemaError
from .formula import Bel, Lit, Truth, is_agent_id, is_prop_id
from .socnet import TieNetwork, betweenness_centrality, degree_centrality, eigenvector_centrality

Q2_ITEMS = ("2a", "2b", "2c")
# item -> (network kind, centrality measure) the question asks about
Q2_TARGETS = {"2a": ("friendship", "degree"), "2b": ("interaction", "betweenness"), "2c": ("collaboration", "eigenvector")}

_MARKS = {"type": "array", "items": {"enum": ["1", "2"]}, "uniqueItems": True}
_TF = {"enum": ["T", "F"]}

SURVEY_SCHEMA = {
    "type": "object",
    "required": ["roster", "responses"],
    "additionalProperties": False,
    "properties": {
        "roster": {"type": "array", "items": {"type": "string"}, "uniqueItems": True},
        "responses": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["respondent"],
                "additionalProperties": False,
                "properties": {
                    "respondent": {"type": "string"},
                    "q1": {
                        "type": "object",
                        "additionalProperties": {
                            "type": "object",
                            "additionalProperties": False,
                            "properties": {
                                "ties": {
                                    "type": "array",
                                    "items": {"type": "integer", "minimum": 1, "maximum": 4},
                                    "uniqueItems": True,
                                },
                                "colA": _MARKS,
                            },
                        },
                    },
                    "q2": {
                        "type": "object",
                        "additionalProperties": False,
                        "properties": {
                            "answers": {
                                "type": "object",
                                "additionalProperties": False,
                                "properties": {item: {"type": "string"} for item in Q2_ITEMS},
                            },
                            "marks": {
                                "type": "object",
                                "additionalProperties": {
                                    "type": "object",
                                    "additionalProperties": False,
                                    "properties": {item: _MARKS for item in Q2_ITEMS},
                                },
                            },
                        },
                    },
                    "q3": {
                        "type": "object",
                        "additionalProperties": False,
                        "properties": {
                            "answers": {"type": "object", "additionalProperties": _TF},
                            "marks": {
                                "type": "object",
                                "additionalProperties": {"type": "object", "additionalProperties": _MARKS},
                            },
                        },
                    },
                },
            },
        },
        "answer_key": {"type": "object", "additionalProperties": _TF},
    },
}


@dataclass(frozen=True)
class SurveyBundle:
    roster: tuple
    respondents: tuple
    q1_ties: Mapping = field(default_factory=dict)  # R -> M -> frozenset[int]
    q1_colA: Mapping = field(default_factory=dict)  # R -> M -> frozenset[str]
    q2_answers: Mapping = field(default_factory=dict)  # R -> item -> agent
    q2_marks: Mapping = field(default_factory=dict)  # R -> M -> item -> frozenset[str]
    q3_answers: Mapping = field(default_factory=dict)  # R -> stmt -> 'T' | 'F'
    q3_marks: Mapping = field(default_factory=dict)  # R -> M -> stmt -> frozenset[str]
    answer_key: Mapping = field(default_factory=dict)

    def answer(self, respondent: str, stmt: str) -> Optional[str]:
        return self.q3_answers.get(respondent, {}).get(stmt)

    def marked(self, respondent: str, member: str, stmt: str, mark: str) -> bool:
        return mark in self.q3_marks.get(respondent, {}).get(member, {}).get(stmt, ())

    def statements(self) -> list:
        found = set(self.answer_key)
        for answers in self.q3_answers.values():
            found.update(answers)
        return sorted(found)

    def answered(self, stmt: str) -> list:
        """Respondents who answered ``stmt``, in roster order."""
        return [r for r in self.respondents if self.answer(r, stmt) is not None]

    def relabel(self, mapping: Mapping[str, str]) -> "SurveyBundle":
        """Consistently rename agents everywhere."""
        m = mapping

        def members(d, inner=lambda v: v):
            return {m[k]: inner(v) for k, v in d.items()}

        return SurveyBundle(
            roster=tuple(m[r] for r in self.roster),
            respondents=tuple(m[r] for r in self.respondents),
            q1_ties={m[r]: members(d) for r, d in self.q1_ties.items()},
            q1_colA={m[r]: members(d) for r, d in self.q1_colA.items()},
            q2_answers={m[r]: {i: m[a] for i, a in d.items()} for r, d in self.q2_answers.items()},
            q2_marks={m[r]: members(d) for r, d in self.q2_marks.items()},
            q3_answers={m[r]: dict(d) for r, d in self.q3_answers.items()},
            q3_marks={m[r]: members(d) for r, d in self.q3_marks.items()},
            answer_key=dict(self.answer_key),
        )

    def to_dict(self) -> dict:
        responses = []
        for r in self.respondents:
            entry = {"respondent": r}
            q1 = {}
            for mbr in self.roster:
                ties = self.q1_ties.get(r, {}).get(mbr)
                col = self.q1_colA.get(r, {}).get(mbr)
                if ties is None and col is None:
                    continue
                q1[mbr] = {"ties": sorted(ties or ()), "colA": sorted(col or ())}
            if q1:
                entry["q1"] = q1
            if r in self.q2_answers or r in self.q2_marks:
                entry["q2"] = {
                    "answers": dict(sorted(self.q2_answers.get(r, {}).items())),
                    "marks": _dump_marks(self.q2_marks.get(r, {})),
                }
            if r in self.q3_answers or r in self.q3_marks:
                entry["q3"] = {
                    "answers": dict(sorted(self.q3_answers.get(r, {}).items())),
                    "marks": _dump_marks(self.q3_marks.get(r, {})),
                }
            responses.append(entry)
        return {"roster": list(self.roster), "responses": responses, "answer_key": dict(sorted(self.answer_key.items()))}


def _dump_marks(marks: Mapping) -> dict:
    return {mbr: {k: sorted(v) for k, v in sorted(items.items())} for mbr, items in sorted(marks.items())}


def _path(error: jsonschema.ValidationError) -> str:
    out = "$"
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def parse_survey_data(data) -> SurveyBundle:
    validator = jsonschema.Draft7Validator(SURVEY_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise SchemaError(errors[0].message, _path(errors[0]))

    roster = tuple(data["roster"])
    for i, name in enumerate(roster):
        if not is_agent_id(name):
            raise SchemaError(f"invalid agent name {name!r}", f"$.roster[{i}]")
    known = set(roster)

    def member(name: str, path: str, respondent: str) -> str:
        if name not in known:
            raise SchemaError(f"{name!r} is not on the roster", path)
        if name == respondent:
            raise SchemaError("respondents cannot mark themselves", path)
        return name

    def statement(stmt: str, path: str) -> str:
        if not is_prop_id(stmt):
            raise SchemaError(f"invalid statement id {stmt!r}", path)
        return stmt

    for stmt in data.get("answer_key", {}):
        statement(stmt, f"$.answer_key.{stmt}")

    respondents = []
    q1_ties, q1_colA, q2_answers, q2_marks, q3_answers, q3_marks = {}, {}, {}, {}, {}, {}
    for i, resp in enumerate(data["responses"]):
        base = f"$.responses[{i}]"
        r = resp["respondent"]
        if r not in known:
            raise SchemaError(f"{r!r} is not on the roster", base + ".respondent")
        if r in respondents:
            raise SchemaError(f"duplicate respondent {r!r}", base + ".respondent")
        respondents.append(r)

        for mbr, entry in resp.get("q1", {}).items():
            member(mbr, f"{base}.q1.{mbr}", r)
            q1_ties.setdefault(r, {})[mbr] = frozenset(entry.get("ties", ()))
            q1_colA.setdefault(r, {})[mbr] = frozenset(entry.get("colA", ()))

        q2 = resp.get("q2", {})
        answers = {}
        for item, name in q2.get("answers", {}).items():
            if name not in known:
                raise SchemaError(f"{name!r} is not on the roster", f"{base}.q2.answers.{item}")
            answers[item] = name
        if answers:
            q2_answers[r] = answers
        for mbr, items in q2.get("marks", {}).items():
            member(mbr, f"{base}.q2.marks.{mbr}", r)
            q2_marks.setdefault(r, {})[mbr] = {k: frozenset(v) for k, v in items.items()}

        q3 = resp.get("q3", {})
        for stmt in q3.get("answers", {}):
            statement(stmt, f"{base}.q3.answers.{stmt}")
        if q3.get("answers"):
            q3_answers[r] = dict(q3["answers"])
        for mbr, stmts in q3.get("marks", {}).items():
            member(mbr, f"{base}.q3.marks.{mbr}", r)
            for stmt in stmts:
                statement(stmt, f"{base}.q3.marks.{mbr}.{stmt}")
            q3_marks.setdefault(r, {})[mbr] = {k: frozenset(v) for k, v in stmts.items()}

    return SurveyBundle(
        roster=roster,
        respondents=tuple(x for x in roster if x in respondents),
        q1_ties=q1_ties,
        q1_colA=q1_colA,
        q2_answers=q2_answers,
        q2_marks=q2_marks,
        q3_answers=q3_answers,
        q3_marks=q3_marks,
        answer_key=dict(data.get("answer_key", {})),
    )


def parse_survey(source) -> SurveyBundle:
    """Parse a survey from a path or an open text file."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return parse_survey_data(data)


def load_answer_key(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    try:
        jsonschema.validate(data, {"type": "object", "additionalProperties": _TF})
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message, _path(exc)) from None
    return data


# -- compilation ------------------------------------------------------------

# statement number -> network kinds it evidences
_TIE_KINDS = {1: ("collaboration",), 2: ("interaction",), 3: ("interaction",), 4: ("friendship",)}


def build_networks(bundle: SurveyBundle) -> dict:
    """Collaboration, friendship and interaction networks; a tie exists if either
    party reports it."""
    edges = {kind: set() for kind in ("collaboration", "friendship", "interaction")}
    for r, by_member in bundle.q1_ties.items():
        for mbr, ties in by_member.items():
            for t in ties:
                for kind in _TIE_KINDS[t]:
                    edges[kind].add((r, mbr))
    return {kind: TieNetwork.build(kind, bundle.roster, es) for kind, es in edges.items()}


def _lit(stmt: str, answer: str) -> Lit:
    return Lit(stmt, answer == "T")


def _marked_assertions(r: str, marks: Mapping, content: Mapping) -> Iterator:
    """Higher-order assertions from '1'/'2' marks; ``content`` maps item -> literal."""
    for mbr in sorted(marks):
        for item in sorted(marks[mbr]):
            lit = content.get(item)
            if lit is None:
                continue
            found = marks[mbr][item]
            if "1" in found:
                yield Bel(r, Bel(mbr, lit))
            if "2" in found:
                # r believes mbr knows r's answer: the knowledge attribution
                # contributes both the nested belief and r's own belief in it
                yield Bel(r, Bel(mbr, Bel(r, lit)))
                yield Bel(r, Bel(r, lit))


def issue_assertions(bundle: SurveyBundle) -> list:
    """Every assertion emitted for the issue epinet, duplicates included."""
    out = []
    for r in bundle.respondents:
        answers = bundle.q3_answers.get(r, {})
        content = {s: _lit(s, a) for s, a in answers.items()}
        for s in sorted(content):
            out.append(Bel(r, content[s]))
        out.extend(_marked_assertions(r, bundle.q3_marks.get(r, {}), content))
    return out


def build_issue_epinet(bundle: SurveyBundle, key: Optional[Mapping] = None) -> Epinet:
    key = bundle.answer_key if key is None else key
    stmts = set(key)
    for r, answers in bundle.q3_answers.items():
        for s in answers:
            if s not in key:
                raise DataError(f"answer key has no entry for statement {s!r}")
            stmts.add(s)
    props = [Proposition(s, f"statement {s}", Truth(key[s])) for s in sorted(stmts)]
    net = Epinet.create(bundle.roster, props)
    return net.assert_beliefs(issue_assertions(bundle))


def rel_prop(r: str, mbr: str, ties) -> str:
    return f"rel:{r},{mbr}={{{','.join(str(t) for t in sorted(ties))}}}"


def cent_prop(item: str, agent: str) -> str:
    return f"cent:{item}={agent}"


def _central_agents(networks: Mapping[str, TieNetwork]) -> dict:
    measures = {"degree": degree_centrality, "betweenness": betweenness_centrality, "eigenvector": eigenvector_centrality}
    out = {}
    for item, (kind, measure) in Q2_TARGETS.items():
        net = networks[kind]
        if not net.edges:
            out[item] = set()
            continue
        scores = measures[measure](net)
        best = max(scores.values())
        out[item] = {a for a, v in scores.items() if best - v <= 1e-9}
    return out


def build_perception_epinet(bundle: SurveyBundle) -> Epinet:
    """Epinet of beliefs about the network itself (question 1 column A and question 2).

    Tie characterizations stay Unknown; answers to 2a-2c are true exactly when
    the named agent is (one of) the most central in the compiled networks.
    """
    central = _central_agents(build_networks(bundle))
    props = {}
    assertions = []
    for r in bundle.respondents:
        content = {}
        for mbr, ties in sorted(bundle.q1_ties.get(r, {}).items()):
            pid = rel_prop(r, mbr, ties)
            props[pid] = Proposition(pid, f"{r} characterizes the tie with {mbr} as {sorted(ties)}")
            content[mbr] = Lit(pid)
            assertions.append(Bel(r, Lit(pid)))
        for mbr, marks in sorted(bundle.q1_colA.get(r, {}).items()):
            assertions.extend(_marked_assertions(r, {mbr: {mbr: marks}}, content))

        answers = bundle.q2_answers.get(r, {})
        items = {}
        for item, agent in sorted(answers.items()):
            pid = cent_prop(item, agent)
            props[pid] = Proposition(pid, f"{agent} is the answer to {item}", Truth.from_bool(agent in central[item]))
            items[item] = Lit(pid)
            assertions.append(Bel(r, Lit(pid)))
        assertions.extend(_marked_assertions(r, bundle.q2_marks.get(r, {}), items))
    net = Epinet.create(bundle.roster, [props[k] for k in sorted(props)])
    return net.assert_beliefs(assertions)
