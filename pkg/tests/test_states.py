import random

import pytest
from hypothesis import given, settings

import gen
from epinet.core import Epinet, Proposition
from epinet.errors import UnknownTruthError
from epinet.fixtures import alice_bob
from epinet.formula import Bel, Lit, Not, Truth, bel_chain
from epinet.states import (
    StateKind,
    awareness_level,
    classify_state,
    has_confidence,
    is_ignorant,
    is_oblivious,
    is_unaware,
)

p = Lit("p")


def _net(*assertions, truth=Truth.TRUE):
    net = Epinet.create(["A", "B"], [Proposition("p", truth=truth), Proposition("u")])
    return net.assert_beliefs(assertions)


def test_awareness_levels():
    assert awareness_level(_net(Bel("A", p)), "A", p) == 1
    assert awareness_level(_net(Bel("A", p), Bel("A", Bel("A", p))), "A", p) == 2
    deep = _net(*(bel_chain(["A"] * n, p) for n in range(1, 5)))
    assert awareness_level(deep, "A", p) == 4
    assert awareness_level(_net(Bel("A", p), Bel("A", Bel("A", p)), truth=Truth.FALSE), "A", p) == 0


def test_awareness_needs_every_prefix():
    # a deep self-belief without the shallower one does not count
    assert awareness_level(_net(Bel("A", Bel("A", p))), "A", p) == 0


def test_unawareness():
    assert is_unaware(_net(Bel("A", p)), "A", p)
    assert not is_unaware(_net(Bel("A", p), Bel("A", Bel("A", p))), "A", p)
    assert not is_unaware(_net(), "A", p)


def test_ignorance():
    assert is_ignorant(_net(Bel("A", Not(Bel("A", p)))), "A", p)
    assert not is_ignorant(_net(Bel("A", p)), "A", p)
    assert not is_ignorant(_net(), "A", p)


def test_oblivion():
    assert is_oblivious(_net(), "A", p)
    assert is_oblivious(_net(), "B", Lit("u"))
    assert not is_oblivious(_net(Bel("A", Not(Bel("A", p)))), "A", p)
    assert is_oblivious(alice_bob(), "Alice", Lit("r"))


def test_confidence():
    assert has_confidence(alice_bob(), "Alice", Lit("q"))
    assert not has_confidence(alice_bob(), "Bob", Lit("q"))
    assert not has_confidence(_net(), "A", p)


def test_unknown_truth_raises():
    net = _net(Bel("A", Lit("u")))
    with pytest.raises(UnknownTruthError):
        awareness_level(net, "A", Lit("u"))
    with pytest.raises(UnknownTruthError):
        classify_state(net, "A", Lit("u"))
    # oblivion is structural and does not look at truth
    assert classify_state(_net(), "A", Lit("u")).kind is StateKind.OBLIVION


def test_classify_examples():
    assert classify_state(alice_bob(), "Alice", Lit("q")).kind is StateKind.MERE_BELIEF
    assert classify_state(_net(), "A", p).kind is StateKind.OBLIVION
    state = classify_state(_net(Bel("A", p), Bel("A", Bel("A", p))), "A", p)
    assert (state.kind, state.level, state.label) == (StateKind.AWARENESS, 2, "awareness-2")
    state = classify_state(_net(Bel("A", p)), "A", p)
    assert state.kind is StateKind.UNAWARENESS and state.label == "knowledge+unawareness" and state.knows
    assert classify_state(_net(Bel("A", Not(Bel("A", p)))), "A", p).kind is StateKind.IGNORANCE
    # mentions p but neither knows, is ignorant, nor believes it
    assert classify_state(_net(Bel("A", Bel("B", p))), "A", p).kind is StateKind.NONE


def test_alice_bob_labels():
    net = alice_bob()
    labels = {(a, s): classify_state(net, a, Lit(s)).label for a in ("Alice", "Bob") for s in "pqr"}
    assert labels == {
        ("Alice", "p"): "knowledge+unawareness",
        ("Alice", "q"): "mere-belief",
        ("Alice", "r"): "oblivion",
        ("Bob", "p"): "knowledge+unawareness",
        ("Bob", "q"): "oblivion",
        ("Bob", "r"): "knowledge+unawareness",
    }


@settings(max_examples=200)
@given(gen.seeds)
def test_state_invariants(seed):
    net = gen.determinate_epinet(random.Random(seed))
    for a in net.agents:
        for prop in net.propositions:
            for lit in (Lit(prop), Lit(prop, False)):
                state = classify_state(net, a, lit)
                level = awareness_level(net, a, lit)
                if is_oblivious(net, a, lit):
                    assert not is_ignorant(net, a, lit)
                    assert state.kind is StateKind.OBLIVION
                if level >= 2:
                    assert not is_unaware(net, a, lit)
                if state.kind is StateKind.AWARENESS:
                    assert state.level == level >= 2


@settings(max_examples=100)
@given(gen.seeds)
def test_awareness_monotone_under_deeper_self_beliefs(seed):
    rng = random.Random(seed)
    net = gen.determinate_epinet(rng)
    a = rng.choice(sorted(net.agents))
    lit = Lit(rng.choice(sorted(net.propositions)), rng.random() < 0.5)
    before = awareness_level(net, a, lit)
    n = rng.randint(1, 4)
    grown = net.assert_belief(bel_chain([a] * n, lit))
    assert awareness_level(grown, a, lit) >= before
    # make the literal false
    falsified = Truth.FALSE if lit.positive else Truth.TRUE
    props = dict(grown.propositions, **{lit.prop: Proposition(lit.prop, truth=falsified)})
    assert awareness_level(Epinet(grown.agents, props, grown.assertions), a, lit) == 0
