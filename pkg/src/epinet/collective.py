"""Group-level measures: distribution, collective awareness, near-commonality,
dyadic cohesion, mobilization barriers and focal-point salience."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Epinet
from .errors import DataError
from .formula import Bel, Know, Lit, evaluate, format_formula, know_chain
from .states import require_truth, awareness_level

DEFAULT_NC_CAP = 6


def mobilization_prop(other: str, agent: str) -> str:
    """Id of the proposition "``other`` mobilizes if ``agent`` does"."""
    return f"mob:{other}|{agent}"


def _members(epinet: Epinet, group: Iterable[str], minimum: int = 1) -> list:
    members = sorted(set(group))
    if len(members) < minimum:
        raise DataError(f"group needs at least {minimum} member(s)")
    for m in members:
        epinet._check_agent(m)
    return members


def distribution(epinet: Epinet, P: Lit, group: Iterable[str]) -> tuple:
    """(count, fraction) of group members who know P."""
    members = _members(epinet, group)
    require_truth(epinet, P)
    count = sum(evaluate(epinet, Know(a, P)) for a in members)
    return count, count / len(members)


def collective_awareness(epinet: Epinet, P: Lit, group: Iterable[str], n: int) -> tuple:
    if n < 1:
        raise ValueError("awareness level must be >= 1")
    members = _members(epinet, group)
    count = sum(awareness_level(epinet, a, P) >= n for a in members)
    return count, count / len(members)


def _alternating(a: str, b: str, length: int) -> list:
    return [a if i % 2 == 0 else b for i in range(length)]


def nc_level_dyad(epinet: Epinet, P: Lit, a: str, b: str, cap: int = DEFAULT_NC_CAP) -> int:
    """Largest n <= cap such that every alternating knowledge chain of length <= n
    about P holds, starting from either agent."""
    if a == b:
        raise DataError("near-commonality needs two distinct agents")
    _members(epinet, (a, b), 2)
    require_truth(epinet, P)
    level = 0
    for length in range(1, cap + 1):
        ok = evaluate(epinet, know_chain(_alternating(a, b, length), P)) and evaluate(
            epinet, know_chain(_alternating(b, a, length), P)
        )
        if not ok:
            break
        level = length
    return level


def _sequences(members: Sequence[str], length: int):
    """Agent sequences of the given length with no immediate repetition."""
    if length == 0:
        yield ()
        return
    for prefix in _sequences(members, length - 1):
        for m in members:
            if not prefix or prefix[-1] != m:
                yield prefix + (m,)


def group_nc_holds(epinet: Epinet, P: Lit, group: Iterable[str], n: int) -> bool:
    members = _members(epinet, group, 2)
    if n <= 0:
        return True
    require_truth(epinet, P)
    return all(
        evaluate(epinet, know_chain(seq, P))
        for length in range(1, n + 1)
        for seq in _sequences(members, length)
    )


def group_nc_depth(epinet: Epinet, P: Lit, group: Iterable[str], cap: int = DEFAULT_NC_CAP) -> int:
    depth = 0
    while depth < cap and group_nc_holds(epinet, P, group, depth + 1):
        depth += 1
    return depth


def dyad_cohesion(epinet: Epinet, P: Lit, a: str, b: str) -> int:
    """0..3, where 3 is a fully cohesive dyad."""
    return nc_level_dyad(epinet, P, a, b, cap=3)


def mobilization_barrier(
    epinet: Epinet,
    agent: str,
    group: Iterable[str],
    thresholds: Mapping[str, int],
    mode: str = "strict",
) -> int:
    """Threshold minus the number of co-mobilizers the agent knows (strict) or
    believes (credulous) will mobilize if it does. Negative means over-determined."""
    if mode not in ("strict", "credulous"):
        raise ValueError(f"unknown mode {mode!r}")
    members = _members(epinet, group)
    if agent not in members:
        raise DataError(f"{agent!r} is not in the group")
    theta = thresholds.get(agent)
    if theta is None or theta < 0 or theta > len(members) - 1:
        raise DataError(f"invalid threshold for {agent!r}: {theta!r}")
    expected = 0
    for other in members:
        if other == agent:
            continue
        prop = mobilization_prop(other, agent)
        if prop not in epinet.propositions:
            raise DataError(f"missing mobilization proposition {prop!r}")
        term = Know(agent, Lit(prop)) if mode == "strict" else Bel(agent, Lit(prop))
        expected += evaluate(epinet, term)
    return theta - expected


@dataclass(frozen=True)
class FocalScore:
    candidate: Lit
    depth: int
    dyad3_fraction: float

    @property
    def name(self) -> str:
        return format_formula(self.candidate)


def focal_salience(
    epinet: Epinet, candidates: Sequence[Lit], group: Iterable[str], cap: int = DEFAULT_NC_CAP
) -> list:
    """Rank candidate focal points by group near-commonality depth, then by the
    share of fully cohesive dyads; ties go to the smaller candidate id."""
    if not candidates:
        raise DataError("at least one candidate is required")
    members = _members(epinet, group, 2)
    for c in candidates:
        require_truth(epinet, c)
    pairs = list(itertools.combinations(members, 2))
    scores = []
    for c in candidates:
        depth = group_nc_depth(epinet, c, members, cap)
        full = sum(dyad_cohesion(epinet, c, a, b) == 3 for a, b in pairs)
        scores.append(FocalScore(c, depth, full / len(pairs)))
    scores.sort(key=lambda s: (-s.depth, -s.dyad3_fraction, s.name))
    return scores
