import itertools
import random

import pytest
from hypothesis import given, settings

import gen
from epinet.collective import (
    collective_awareness,
    distribution,
    dyad_cohesion,
    focal_salience,
    group_nc_depth,
    group_nc_holds,
    mobilization_barrier,
    mobilization_prop,
    nc_level_dyad,
)
from epinet.core import Epinet, Proposition
from epinet.errors import DataError, UnknownTruthError
from epinet.fixtures import alice_bob
from epinet.formula import Bel, Lit, Truth, bel_chain, parse

p = Lit("p")


def _net(agents, props=("p",), truth=Truth.TRUE, beliefs=()):
    net = Epinet.create(agents, [Proposition(x, truth=truth) for x in props])
    return net.assert_beliefs(parse(b) if isinstance(b, str) else b for b in beliefs)


def _chains(agents, lit, depth):
    """Every belief chain over ``agents`` up to ``depth``; knowing that B knows
    that A knows p makes A believe that A believes p, so repeats are needed."""
    return [bel_chain(seq, lit) for n in range(1, depth + 1) for seq in itertools.product(agents, repeat=n)]


def test_distribution_examples():
    agents = ["A", "B", "C", "D", "E"]
    everyone = _net(agents, beliefs=[Bel(a, p) for a in agents])
    assert distribution(everyone, p, agents) == (5, 1.0)
    false = _net(agents, truth=Truth.FALSE, beliefs=[Bel(a, p) for a in agents])
    assert distribution(false, p, agents) == (0, 0.0)
    three = _net(agents, beliefs=[Bel(a, p) for a in agents[:3]])
    assert distribution(three, p, agents) == (3, 0.6)


def test_collective_awareness_examples():
    agents = ["A", "B", "C", "D"]
    beliefs = [Bel(a, p) for a in agents] + [bel_chain([a, a], p) for a in agents[:2]]
    net = _net(agents, beliefs=beliefs)
    assert collective_awareness(net, p, agents, 1) == distribution(net, p, agents)
    assert collective_awareness(net, p, agents, 2) == (2, 0.5)
    assert collective_awareness(net, p, agents, 9) == (0, 0.0)


def test_nc_examples():
    net = _net(["A", "B"], beliefs=["A b p", "B b p"])
    assert nc_level_dyad(net, p, "A", "B") == 1
    assert nc_level_dyad(alice_bob(), p, "Alice", "Bob") == 1
    full = _net(["A", "B"], beliefs=_chains(["A", "B"], p, 3))
    assert nc_level_dyad(full, p, "A", "B") == 3
    assert nc_level_dyad(full, p, "A", "B", cap=2) == 2


def test_nc_errors():
    with pytest.raises(DataError):
        nc_level_dyad(_net(["A", "B"]), p, "A", "A")
    with pytest.raises(UnknownTruthError):
        nc_level_dyad(_net(["A", "B"], truth=Truth.UNKNOWN), p, "A", "B")


def test_group_nc_examples():
    agents = ["A", "B", "C"]
    net = _net(agents, beliefs=[Bel(a, p) for a in agents])
    assert group_nc_holds(net, p, agents, 1)
    assert group_nc_holds(_net(agents), p, agents, 0)
    chains = [c for c in _chains(agents, p, 2) if c != bel_chain(["C", "A"], p)]
    assert not group_nc_holds(_net(agents, beliefs=chains), p, agents, 2)
    assert group_nc_holds(_net(agents, beliefs=_chains(agents, p, 2)), p, agents, 2)
    assert group_nc_depth(_net(agents, beliefs=_chains(agents, p, 3)), p, agents) == 3


def test_dyad_cohesion_examples():
    full = _net(["Alice", "Bob"], beliefs=_chains(["Alice", "Bob"], p, 3))
    assert dyad_cohesion(full, p, "Alice", "Bob") == 3
    partial = _net(["Alice", "Bob"], beliefs=_chains(["Alice", "Bob"], p, 2) + ["Bob b Alice b Bob b p"])
    assert dyad_cohesion(partial, p, "Alice", "Bob") == 2
    one_side = _net(["Alice", "Bob"], beliefs=["Alice b p", "Bob b ~Bob b p"])
    assert dyad_cohesion(one_side, p, "Alice", "Bob") == 0
    deep = _net(["Alice", "Bob"], beliefs=_chains(["Alice", "Bob"], p, 5))
    assert dyad_cohesion(deep, p, "Alice", "Bob") == 3


def _mob_net(agents, truths, beliefs):
    props = [Proposition(mobilization_prop(b, a), truth=truths.get((b, a), Truth.TRUE)) for a in agents for b in agents if a != b]
    net = Epinet.create(agents, props)
    return net.assert_beliefs(Bel(a, Lit(mobilization_prop(b, a))) for b, a in beliefs)


def test_mobilization_barrier():
    agents = ["A", "B", "C", "D"]
    net = _mob_net(agents, {}, [("B", "A")])
    assert mobilization_barrier(net, "A", agents, {"A": 3}) == 2
    assert mobilization_barrier(net, "A", agents, {"A": 0}) <= 0
    lied = _mob_net(agents, {("B", "A"): Truth.FALSE}, [("B", "A")])
    strict = mobilization_barrier(lied, "A", agents, {"A": 2}, "strict")
    credulous = mobilization_barrier(lied, "A", agents, {"A": 2}, "credulous")
    assert strict == credulous + 1


def test_mobilization_barrier_counts_each_known_co_mobilizer():
    agents = ["A", "B", "C", "D"]
    known = []
    last = mobilization_barrier(_mob_net(agents, {}, known), "A", agents, {"A": 3})
    for other in ("B", "C", "D"):
        known.append((other, "A"))
        now = mobilization_barrier(_mob_net(agents, {}, known), "A", agents, {"A": 3})
        assert now == last - 1
        last = now


def test_mobilization_barrier_errors():
    agents = ["A", "B"]
    net = _mob_net(agents, {}, [])
    with pytest.raises(DataError):
        mobilization_barrier(net, "A", agents, {"A": 2})
    with pytest.raises(DataError):
        mobilization_barrier(_net(agents), "A", agents, {"A": 1})
    with pytest.raises(ValueError):
        mobilization_barrier(net, "A", agents, {"A": 1}, mode="sometimes")


def test_focal_salience_ranking():
    agents = ["A", "B", "C"]
    props = ("x", "y", "z")
    x, y, z = (Lit(s) for s in props)
    beliefs = _chains(agents, x, 2) + _chains(agents, y, 1)
    net = _net(agents, props, beliefs=beliefs)
    ranked = focal_salience(net, [y, x, z], agents)
    assert [s.name for s in ranked] == ["x", "y", "z"]
    assert [s.depth for s in ranked] == [2, 1, 0]
    empty = focal_salience(_net(agents, props), [z, y, x], agents)
    assert [s.name for s in empty] == ["x", "y", "z"]


def test_focal_salience_breaks_depth_ties_by_cohesion():
    agents = ["A", "B", "C", "D", "E"]
    x, y = Lit("x"), Lit("y")
    beliefs = _chains(["A", "B"], x, 3) + _chains(["A", "B"], y, 3) + _chains(["C", "D"], y, 3)
    net = _net(agents, ("x", "y"), beliefs=beliefs)
    ranked = focal_salience(net, [x, y], agents)
    assert [s.name for s in ranked] == ["y", "x"]
    assert (ranked[0].dyad3_fraction, ranked[1].dyad3_fraction) == (0.2, 0.1)


def test_focal_salience_needs_candidates():
    with pytest.raises(DataError):
        focal_salience(_net(["A", "B"]), [], ["A", "B"])


@settings(max_examples=150)
@given(gen.seeds)
def test_nc_properties(seed):
    rng = random.Random(seed)
    net = gen.chain_rich_epinet(rng)
    agents = sorted(net.agents)
    a, b = rng.sample(agents, 2)
    level = nc_level_dyad(net, p, a, b)
    assert level == nc_level_dyad(net, p, b, a)
    for m in range(1, 6):
        assert (nc_level_dyad(net, p, a, b, cap=m) >= m) == (level >= m)
    extra = gen.storable(rng, agents, ["p"], 4)
    assert nc_level_dyad(net.assert_belief(extra), p, a, b) >= level
    depth = group_nc_depth(net, p, agents)
    for n in range(0, depth + 1):
        assert group_nc_holds(net, p, agents, n)
        for x, y in itertools.combinations(agents, 2):
            assert nc_level_dyad(net, p, x, y) >= n


@settings(max_examples=100)
@given(gen.seeds)
def test_collective_awareness_shrinks_with_level(seed):
    rng = random.Random(seed)
    net = gen.chain_rich_epinet(rng)
    agents = sorted(net.agents)
    counts = [collective_awareness(net, p, agents, n)[0] for n in range(1, 6)]
    assert counts == sorted(counts, reverse=True)
    count, frac = distribution(net, p, agents)
    assert 0.0 <= frac <= 1.0 and counts[0] == count
