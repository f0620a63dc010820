"""Epistemic formulas: terms, concrete syntax, k-elimination and evaluation.

Concrete grammar::

    Formula := Conj
    Conj    := Unary ('&' Unary)*
    Unary   := '~' Unary | Agent ('k' | 'b') Unary | '(' Formula ')' | ['!'] PropId

``A k P`` reads "A knows P", ``A b P`` reads "A believes P", ``~`` is
negation and ``!p`` is the negative literal of proposition ``p``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Union

from .errors import DataError, FormulaSyntaxError, UnknownTruthError

if TYPE_CHECKING:
    from .core import Epinet


class Truth(enum.Enum):
    TRUE = "T"
    FALSE = "F"
    UNKNOWN = "U"

    def __invert__(self) -> "Truth":
        if self is Truth.UNKNOWN:
            return self
        return Truth.FALSE if self is Truth.TRUE else Truth.TRUE

    @classmethod
    def from_bool(cls, value: bool) -> "Truth":
        return cls.TRUE if value else cls.FALSE


@dataclass(frozen=True)
class Lit:
    prop: str
    positive: bool = True


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Bel:
    agent: str
    body: "Formula"


@dataclass(frozen=True)
class Know:
    agent: str
    body: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple


Formula = Union[Lit, Not, Bel, Know, And]

KEYWORDS = frozenset({"k", "b"})
_IDENT = re.compile(r"[^\s~&()!]+")
_TOKEN = re.compile(r"\s*(?:([~&()!])|([^\s~&()!]+))")


def is_prop_id(name: str) -> bool:
    return isinstance(name, str) and _IDENT.fullmatch(name) is not None


def is_agent_id(name: str) -> bool:
    """Agent ids are proposition-style ids other than the operator keywords."""
    return is_prop_id(name) and name not in KEYWORDS


# -- construction helpers -------------------------------------------------


def neg(f: Formula) -> Formula:
    """Negation with double-negation removal and literal folding."""
    if isinstance(f, Not):
        return f.body
    if isinstance(f, Lit):
        return Lit(f.prop, not f.positive)
    return Not(f)


def conj(*parts: Formula) -> Formula:
    """Flattened, deduplicated, sorted conjunction; a single part is returned as is."""
    flat = set()
    for p in parts:
        if isinstance(p, And):
            flat.update(p.args)
        else:
            flat.add(p)
    if not flat:
        raise ValueError("empty conjunction")
    if len(flat) == 1:
        return flat.pop()
    return And(tuple(sorted(flat, key=format_formula)))


def normalize(f: Formula) -> Formula:
    if isinstance(f, Lit):
        return f
    if isinstance(f, Not):
        return neg(normalize(f.body))
    if isinstance(f, Bel):
        return Bel(f.agent, normalize(f.body))
    if isinstance(f, Know):
        return Know(f.agent, normalize(f.body))
    if isinstance(f, And):
        return conj(*(normalize(a) for a in f.args))
    raise TypeError(f"not a formula: {f!r}")


def is_belief_only(f: Formula) -> bool:
    """True for storable terms: literals, negations and beliefs, no Know or And."""
    while True:
        if isinstance(f, Lit):
            return True
        if isinstance(f, (Not, Bel)):
            f = f.body
            continue
        return False


def agents_in(f: Formula) -> Iterator[str]:
    if isinstance(f, (Bel, Know)):
        yield f.agent
        yield from agents_in(f.body)
    elif isinstance(f, Not):
        yield from agents_in(f.body)
    elif isinstance(f, And):
        for a in f.args:
            yield from agents_in(a)


def props_in(f: Formula) -> Iterator[str]:
    if isinstance(f, Lit):
        yield f.prop
    elif isinstance(f, (Bel, Know, Not)):
        yield from props_in(f.body)
    elif isinstance(f, And):
        for a in f.args:
            yield from props_in(a)


def belief_depth(f: Formula) -> int:
    """Maximum nesting of Bel/Know operators."""
    if isinstance(f, Lit):
        return 0
    if isinstance(f, Not):
        return belief_depth(f.body)
    if isinstance(f, (Bel, Know)):
        return 1 + belief_depth(f.body)
    return max(belief_depth(a) for a in f.args)


def know_chain(agents, body: Formula) -> Formula:
    """``know_chain(["A", "B"], p)`` is ``A k B k p``."""
    for a in reversed(list(agents)):
        body = Know(a, body)
    return body


def bel_chain(agents, body: Formula) -> Formula:
    for a in reversed(list(agents)):
        body = Bel(a, body)
    return body


# -- concrete syntax ------------------------------------------------------


def format_formula(f: Formula) -> str:
    if isinstance(f, And):
        return " & ".join(_format_unary(a) for a in f.args)
    return _format_unary(f)


def _format_unary(f: Formula) -> str:
    if isinstance(f, Lit):
        return f.prop if f.positive else "!" + f.prop
    if isinstance(f, Not):
        return "~" + _format_unary(f.body)
    if isinstance(f, Bel):
        return f"{f.agent} b {_format_unary(f.body)}"
    if isinstance(f, Know):
        return f"{f.agent} k {_format_unary(f.body)}"
    if isinstance(f, And):
        return "(" + format_formula(f) + ")"
    raise TypeError(f"not a formula: {f!r}")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append((m.group(1), m.group(1), m.start(1)))
        elif m.group(2) is not None:
            word = m.group(2)
            kind = word if word in KEYWORDS else "id"
            tokens.append((kind, word, m.start(2)))
        else:
            break
        pos = m.end()
    if text[pos:].strip():
        raise FormulaSyntaxError("unexpected character", pos)
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def _prop_id(self) -> str:
        kind, value, pos = self.peek()
        if kind != "id" and kind not in KEYWORDS:
            what = "end of input" if kind == "eof" else repr(value)
            raise FormulaSyntaxError(f"expected a proposition id, found {what}", pos)
        self.i += 1
        return value

    def formula(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[0] == "&":
            self.i += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "~":
            self.i += 1
            return Not(self.unary())
        if kind == "(":
            self.i += 1
            inner = self.formula()
            self.take(")")
            return inner
        if kind == "!":
            self.i += 1
            return Lit(self._prop_id(), positive=False)
        if kind in KEYWORDS:
            # agents never use keyword names, so a keyword here is a proposition
            self.i += 1
            return Lit(value)
        if kind == "id":
            self.i += 1
            op = self.peek()[0]
            if op in KEYWORDS:
                self.i += 1
                body = self.unary()
                return Know(value, body) if op == "k" else Bel(value, body)
            return Lit(value)
        what = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"unexpected {what}", pos)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a term, preserving conjunct order as written."""
    if not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    p = _Parser(text)
    f = p.formula()
    p.take("eof")
    return f


# -- k-elimination --------------------------------------------------------


def eliminate_k(f: Formula) -> Formula:
    """Rewrite ``f`` into an equivalent normalized term without Know nodes.

    ``Know(A, x)`` becomes ``Bel(A, x) & x``, and belief distributes over
    conjunction so every remaining Bel node wraps a storable term. Inside a
    belief, a negated knowledge attribution ``~B k x`` is read as the
    negated belief attribution ``~B b x``.
    """
    return _elim(normalize(f))


def _elim(f: Formula) -> Formula:
    if isinstance(f, Lit):
        return f
    if isinstance(f, Not):
        return neg(_elim(f.body))
    if isinstance(f, And):
        return conj(*(_elim(a) for a in f.args))
    if isinstance(f, Bel):
        return _push(f.agent, _content(f.body))
    if isinstance(f, Know):
        return conj(_push(f.agent, _content(f.body)), _elim(f.body))
    raise TypeError(f"not a formula: {f!r}")


def _content(f: Formula) -> Formula:
    # The term as held inside somebody's belief.
    if isinstance(f, Lit):
        return f
    if isinstance(f, And):
        return conj(*(_content(a) for a in f.args))
    if isinstance(f, Bel):
        return _push(f.agent, _content(f.body))
    if isinstance(f, Know):
        return conj(_push(f.agent, _content(f.body)), _content(f.body))
    if isinstance(f, Not):
        inner = f.body
        if isinstance(inner, (Bel, Know)):
            return neg(_push(inner.agent, _content(inner.body)))
        return neg(_content(inner))
    raise TypeError(f"not a formula: {f!r}")


def _push(agent: str, f: Formula) -> Formula:
    if isinstance(f, And):
        return conj(*(_push(agent, a) for a in f.args))
    return Bel(agent, f)


# -- evaluation -----------------------------------------------------------


def check_ids(epinet: "Epinet", f: Formula) -> None:
    for a in agents_in(f):
        if a not in epinet.agents:
            raise DataError(f"unknown agent {a!r}")
    for p in props_in(f):
        if p not in epinet.propositions:
            raise DataError(f"unknown proposition {p!r}")


def evaluate(epinet: "Epinet", f: Formula) -> bool:
    """Closed-world truth of ``f`` in ``epinet``.

    Raises UnknownTruthError if a literal with Unknown truth has to be
    evaluated. Belief atoms never look at truth values.
    """
    check_ids(epinet, f)
    return _eval(epinet, eliminate_k(f))


def _eval(epinet: "Epinet", f: Formula) -> bool:
    if isinstance(f, Lit):
        t = epinet.literal_truth(f)
        if t is Truth.UNKNOWN:
            raise UnknownTruthError(f"truth of {f.prop!r} is unknown")
        return t is Truth.TRUE
    if isinstance(f, Not):
        return not _eval(epinet, f.body)
    if isinstance(f, And):
        # no short-circuit: every Unknown literal must surface
        results = [_eval(epinet, a) for a in f.args]
        return all(results)
    if isinstance(f, Bel):
        return f in epinet.assertions
    raise TypeError(f"unexpected term after k-elimination: {f!r}")
