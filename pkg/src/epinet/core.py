"""The epinet data model: agents, propositions, belief assertions, confidence."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional

from .errors import DataError, FormulaSyntaxError, SchemaError
from .formula import (
    Bel,
    Formula,
    Lit,
    Truth,
    belief_depth,
    check_ids,
    format_formula,
    is_belief_only,
    is_agent_id,
    is_prop_id,
    normalize,
    parse,
    props_in,
)

__all__ = ["Proposition", "Epinet", "Truth"]


@dataclass(frozen=True)
class Proposition:
    id: str
    statement: str = ""
    truth: Truth = Truth.UNKNOWN
    negation_of: Optional[str] = None


@dataclass(frozen=True)
class Epinet:
    """Immutable epinet value. Build with :meth:`create` and the ``with_*`` methods."""

    agents: frozenset = frozenset()
    propositions: Mapping[str, Proposition] = field(default_factory=dict)
    assertions: frozenset = frozenset()
    confidence: frozenset = frozenset()

    @classmethod
    def create(cls, agents: Iterable[str], propositions: Iterable[Proposition] = ()) -> "Epinet":
        agents = list(agents)
        for a in agents:
            if not is_agent_id(a):
                raise DataError(f"invalid agent id {a!r}")
        if len(set(agents)) != len(agents):
            raise DataError("duplicate agent id")
        table = {}
        for p in propositions:
            if not is_prop_id(p.id):
                raise DataError(f"invalid proposition id {p.id!r}")
            if p.id in table:
                raise DataError(f"duplicate proposition id {p.id!r}")
            table[p.id] = p
        _check_negation_links(table)
        return cls(frozenset(agents), table)

    # -- construction ---------------------------------------------------

    def assert_belief(self, formula: Formula) -> "Epinet":
        return self.assert_beliefs([formula])

    def assert_beliefs(self, formulas: Iterable[Formula]) -> "Epinet":
        new = set(self.assertions)
        for f in formulas:
            new.add(self._validated(f))
        return replace(self, assertions=frozenset(new))

    def with_confidence(self, agent: str, prop: str) -> "Epinet":
        self._check_agent(agent)
        self._check_prop(prop)
        return replace(self, confidence=self.confidence | {(agent, prop)})

    def _validated(self, f: Formula) -> Bel:
        f = normalize(f)
        if not isinstance(f, Bel) or not is_belief_only(f):
            raise DataError(f"assertions must be belief-rooted and belief-only: {format_formula(f)!r}")
        self._check_ids(f)
        return f

    def _check_agent(self, agent: str) -> None:
        if agent not in self.agents:
            raise DataError(f"unknown agent {agent!r}")

    def _check_prop(self, prop: str) -> None:
        if prop not in self.propositions:
            raise DataError(f"unknown proposition {prop!r}")

    def _check_ids(self, f: Formula) -> None:
        check_ids(self, f)

    # -- queries ---------------------------------------------------------

    def holds_assertion(self, formula: Formula) -> bool:
        self._check_ids(formula)
        return normalize(formula) in self.assertions

    def mentions(self, agent: str, prop: str) -> bool:
        self._check_agent(agent)
        self._check_prop(prop)
        return any(f.agent == agent and prop in props_in(f) for f in self.assertions)

    def literal_truth(self, literal: Lit) -> Truth:
        self._check_prop(literal.prop)
        t = self.propositions[literal.prop].truth
        return t if literal.positive else ~t

    def max_depth(self, agent: str) -> int:
        """Deepest Bel nesting among assertions rooted at ``agent``."""
        return max((belief_depth(f) for f in self.assertions if f.agent == agent), default=0)

    def sorted_assertions(self) -> list:
        return sorted(format_formula(f) for f in self.assertions)

    # -- JSON ------------------------------------------------------------

    def to_dict(self) -> dict:
        props = []
        for pid in sorted(self.propositions):
            p = self.propositions[pid]
            d = {"id": p.id, "statement": p.statement, "truth": p.truth.value}
            if p.negation_of is not None:
                d["negation_of"] = p.negation_of
            props.append(d)
        return {
            "agents": sorted(self.agents),
            "propositions": props,
            "assertions": self.sorted_assertions(),
            "confidence": [{"agent": a, "proposition": p} for a, p in sorted(self.confidence)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Epinet":
        if not isinstance(data, dict):
            raise SchemaError("expected an object")
        for key in ("agents", "propositions", "assertions"):
            if not isinstance(data.get(key), list):
                raise SchemaError("expected a list", f"$.{key}")
        props = []
        for i, p in enumerate(data["propositions"]):
            path = f"$.propositions[{i}]"
            if not isinstance(p, dict) or not isinstance(p.get("id"), str):
                raise SchemaError("expected an object with a string 'id'", path)
            try:
                truth = Truth(p.get("truth", "U"))
            except ValueError:
                raise SchemaError("truth must be 'T', 'F' or 'U'", path + ".truth") from None
            props.append(Proposition(p["id"], p.get("statement", ""), truth, p.get("negation_of")))
        net = cls.create(data["agents"], props)
        formulas = []
        for i, text in enumerate(data["assertions"]):
            if not isinstance(text, str):
                raise SchemaError("expected a formula string", f"$.assertions[{i}]")
            try:
                formulas.append(parse(text))
            except FormulaSyntaxError as exc:
                raise SchemaError(str(exc), f"$.assertions[{i}]") from None
        net = net.assert_beliefs(formulas)
        for i, c in enumerate(data.get("confidence", [])):
            if not isinstance(c, dict):
                raise SchemaError("expected an object", f"$.confidence[{i}]")
            net = net.with_confidence(c.get("agent"), c.get("proposition"))
        return net

    @classmethod
    def from_json(cls, text: str) -> "Epinet":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "Epinet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


def _check_negation_links(table: Mapping[str, Proposition]) -> None:
    for p in table.values():
        if p.negation_of is None:
            continue
        other = table.get(p.negation_of)
        if other is None:
            raise DataError(f"{p.id!r} negates unknown proposition {p.negation_of!r}")
        if other.negation_of != p.id:
            raise DataError(f"negation link {p.id!r} -> {other.id!r} is not symmetric")
        if Truth.UNKNOWN not in (p.truth, other.truth) and p.truth == other.truth:
            raise DataError(f"{p.id!r} and its negation {other.id!r} have the same truth")
