"""Individual epistemic states of an agent toward a literal."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .core import Epinet
from .errors import UnknownTruthError
from .formula import Bel, Know, Lit, Not, Truth, evaluate, know_chain


class StateKind(enum.Enum):
    OBLIVION = "oblivion"
    IGNORANCE = "ignorance"
    AWARENESS = "awareness"
    UNAWARENESS = "unawareness"
    MERE_BELIEF = "mere-belief"
    NONE = "none"


@dataclass(frozen=True)
class EpistemicState:
    kind: StateKind
    level: Optional[int] = None

    @property
    def knows(self) -> bool:
        return self.kind in (StateKind.AWARENESS, StateKind.UNAWARENESS)

    @property
    def label(self) -> str:
        if self.kind is StateKind.AWARENESS:
            return f"awareness-{self.level}"
        if self.kind is StateKind.UNAWARENESS:
            # knowing P without knowing it is known; reported jointly
            return "knowledge+unawareness"
        return self.kind.value


def require_truth(epinet: Epinet, P: Lit) -> None:
    if epinet.literal_truth(P) is Truth.UNKNOWN:
        raise UnknownTruthError(f"truth of {P.prop!r} is unknown")


def awareness_level(epinet: Epinet, agent: str, P: Lit) -> int:
    """Largest n such that the agent knows^n P; 0 if the agent does not know P."""
    require_truth(epinet, P)
    bound = epinet.max_depth(agent)
    level = 0
    while level < bound and evaluate(epinet, know_chain([agent] * (level + 1), P)):
        level += 1
    return level


def is_unaware(epinet: Epinet, agent: str, P: Lit) -> bool:
    return awareness_level(epinet, agent, P) == 1


def is_ignorant(epinet: Epinet, agent: str, P: Lit) -> bool:
    """Does not know P but knows that it does not know P."""
    require_truth(epinet, P)
    not_known = Not(Know(agent, P))
    return evaluate(epinet, not_known) and evaluate(epinet, Know(agent, not_known))


def is_oblivious(epinet: Epinet, agent: str, P: Lit) -> bool:
    return not epinet.mentions(agent, P.prop)


def has_confidence(epinet: Epinet, agent: str, P: Lit) -> bool:
    epinet._check_agent(agent)
    epinet._check_prop(P.prop)
    return (agent, P.prop) in epinet.confidence


def classify_state(epinet: Epinet, agent: str, P: Lit) -> EpistemicState:
    """Classify with precedence oblivion, ignorance, awareness, unawareness, mere belief."""
    if is_oblivious(epinet, agent, P):
        return EpistemicState(StateKind.OBLIVION)
    if is_ignorant(epinet, agent, P):
        return EpistemicState(StateKind.IGNORANCE)
    level = awareness_level(epinet, agent, P)
    if level >= 2:
        return EpistemicState(StateKind.AWARENESS, level)
    if level == 1:
        return EpistemicState(StateKind.UNAWARENESS, 1)
    if epinet.holds_assertion(Bel(agent, P)) and epinet.literal_truth(P) is Truth.FALSE:
        return EpistemicState(StateKind.MERE_BELIEF)
    return EpistemicState(StateKind.NONE)
