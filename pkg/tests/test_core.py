import json
import random

import pytest
from hypothesis import given

import gen
import oracles
from epinet.core import Epinet, Proposition
from epinet.errors import DataError, SchemaError
from epinet.fixtures import alice_bob, data_path
from epinet.formula import Bel, Know, Lit, Not, Truth, parse

p = Lit("p")


def _net():
    return Epinet.create(["Alice", "Bob"], [Proposition("p", truth=Truth.TRUE), Proposition("s")])


def test_assert_single_atom():
    net = _net().assert_belief(Bel("Alice", p))
    assert net.assertions == {Bel("Alice", p)}


def test_assert_is_idempotent():
    net = _net().assert_belief(Bel("Alice", p)).assert_belief(Bel("Alice", p))
    assert len(net.assertions) == 1


def test_double_negation_is_normalized_on_insert():
    net = _net().assert_belief(Bel("Alice", Not(Not(p))))
    assert net.assertions == {Bel("Alice", p)}


def test_assert_returns_new_value():
    base = _net()
    grown = base.assert_belief(Bel("Alice", p))
    assert base.assertions == frozenset()
    assert grown != base


@pytest.mark.parametrize(
    "bad",
    [p, Not(Bel("Alice", p)), Know("Alice", p), Bel("Alice", Know("Bob", p)), Bel("Carol", p), Bel("Alice", Lit("zz"))],
)
def test_rejects_invalid_assertions(bad):
    with pytest.raises(DataError):
        _net().assert_belief(bad)


def test_holds_assertion_closed_world():
    net = _net()
    assert not net.holds_assertion(Bel("Alice", p))
    net = net.assert_belief(Bel("Bob", Bel("Alice", p)))
    assert net.holds_assertion(Bel("Bob", Bel("Alice", p)))
    assert not net.holds_assertion(Bel("Alice", Bel("Bob", p)))


def test_mentions_examples():
    net = Epinet.create(["A"], [Proposition("p", truth=Truth.TRUE)])
    assert not net.mentions("A", "p")
    net = net.assert_belief(Bel("A", Not(Bel("A", p))))
    assert net.mentions("A", "p")
    assert not alice_bob().mentions("Alice", "r")


def test_literal_truth():
    net = alice_bob()
    assert net.literal_truth(Lit("q", False)) is Truth.TRUE
    assert net.literal_truth(Lit("p")) is Truth.TRUE
    s = _net()
    assert s.literal_truth(Lit("s")) is Truth.UNKNOWN
    assert s.literal_truth(Lit("s", False)) is Truth.UNKNOWN


def test_create_validation():
    with pytest.raises(DataError):
        Epinet.create(["A", "A"])
    with pytest.raises(DataError):
        Epinet.create(["  "])
    with pytest.raises(DataError):
        Epinet.create(["k"])
    with pytest.raises(DataError):
        Epinet.create(["A"], [Proposition("p"), Proposition("p")])
    with pytest.raises(DataError):
        Epinet.create(["A"], [Proposition("p", negation_of="q")])
    with pytest.raises(DataError):
        Epinet.create(["A"], [Proposition("p", negation_of="q"), Proposition("q")])
    with pytest.raises(DataError):
        Epinet.create(
            ["A"],
            [Proposition("p", truth=Truth.TRUE, negation_of="q"), Proposition("q", truth=Truth.TRUE, negation_of="p")],
        )


@given(gen.seeds)
def test_negation_links_have_opposite_truth(seed):
    rng = random.Random(seed)
    tp = rng.choice(list(Truth))
    tq = ~tp if tp is not Truth.UNKNOWN else rng.choice(list(Truth))
    net = Epinet.create(["A"], [Proposition("p", truth=tp, negation_of="q"), Proposition("q", truth=tq, negation_of="p")])
    if Truth.UNKNOWN not in (tp, tq):
        assert net.literal_truth(Lit("p")) is net.literal_truth(Lit("q", False))


@given(gen.epinets())
def test_mentions_matches_token_scan(net):
    for a in net.agents:
        for prop in net.propositions:
            assert net.mentions(a, prop) == oracles.mentions(net, a, prop)


@given(gen.epinets(), gen.seeds)
def test_assertion_is_monotone(net, seed):
    rng = random.Random(seed)
    extra = gen.storable(rng, sorted(net.agents), sorted(net.propositions), 3)
    grown = net.assert_belief(extra)
    assert net.assertions <= grown.assertions
    assert all(grown.holds_assertion(f) for f in net.assertions)


@given(gen.epinets())
def test_json_round_trip(net):
    again = Epinet.from_json(net.to_json())
    assert again == net
    assert again.to_json() == net.to_json()


def test_json_export_is_sorted():
    d = alice_bob().to_dict()
    assert d["assertions"] == sorted(d["assertions"])
    assert d["agents"] == ["Alice", "Bob"]
    assert d["confidence"] == [{"agent": "Alice", "proposition": "q"}]


def test_bundled_fixture_file_matches_builder():
    assert Epinet.load(data_path("alice_bob.json")) == alice_bob()


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"agents": "A", "propositions": [], "assertions": []}, "$.agents"),
        ({"agents": ["A"], "propositions": [{"id": "p", "truth": "X"}], "assertions": []}, "$.propositions[0].truth"),
        ({"agents": ["A"], "propositions": [{"id": "p"}], "assertions": ["A b ("]}, "$.assertions[0]"),
        ({"agents": ["A"], "propositions": [{"id": "p"}], "assertions": [3]}, "$.assertions[0]"),
    ],
)
def test_schema_errors_name_the_path(doc, path):
    with pytest.raises(SchemaError) as info:
        Epinet.from_json(json.dumps(doc))
    assert info.value.path == path


def test_invalid_json_text():
    with pytest.raises(SchemaError):
        Epinet.from_json("{not json")


def test_confidence_does_not_create_knowledge():
    net = _net().with_confidence("Alice", "p")
    from epinet.formula import evaluate

    assert not evaluate(net, Know("Alice", p))
    assert evaluate(net.assert_belief(parse("Alice b p")), Know("Alice", p))
