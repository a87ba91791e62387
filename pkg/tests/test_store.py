import random

import pytest

from oracles import brute_match, rand_store_triples, rand_triple
from qkb.model import Iri, Literal, QREG_NS, Triple, TriplePattern, Variable
from qkb.store import Store, StoreFrozenError

NS = QREG_NS
ALLAH = Iri(NS + "Allah")
PARTED = Iri(NS + "parted")
SEA = Iri(NS + "Sea")


def test_insert_is_set_semantics():
    store = Store()
    t = Triple(ALLAH, PARTED, SEA)
    assert store.insert(t) is True
    assert store.insert(t) is False
    assert store.size() == 1


def test_size_grows_by_one_per_fresh_insert():
    store = Store()
    for i in range(5):
        assert store.insert(Triple(ALLAH, PARTED, Iri(f"{NS}o{i}")))
    assert store.size() == 5


def test_contains_after_insert():
    store = Store()
    store.insert(Triple(ALLAH, PARTED, SEA))
    assert store.contains(Triple(ALLAH, PARTED, SEA))
    assert Triple(ALLAH, PARTED, SEA) in store
    assert Triple(SEA, PARTED, ALLAH) not in store


def test_match_single_pattern_binds_variable():
    store = Store()
    store.insert(Triple(ALLAH, PARTED, SEA))
    out = store.match(TriplePattern(ALLAH, PARTED, Variable("Answer")))
    assert out == [{"Answer": SEA}]


def test_match_everything_on_empty_store():
    store = Store()
    assert store.match(TriplePattern(Variable("s"), Variable("p"), Variable("o"))) == []


def test_ground_pattern_yields_one_empty_binding():
    store = Store()
    store.insert(Triple(ALLAH, PARTED, SEA))
    assert store.match(TriplePattern(ALLAH, PARTED, SEA)) == [{}]
    assert store.match(TriplePattern(ALLAH, PARTED, ALLAH)) == []


def test_repeated_variable_requires_equal_terms():
    store = Store()
    store.insert(Triple(ALLAH, PARTED, ALLAH))
    store.insert(Triple(ALLAH, PARTED, SEA))
    out = store.match(TriplePattern(Variable("x"), PARTED, Variable("x")))
    assert out == [{"x": ALLAH}]


def test_literal_in_subject_position_matches_nothing():
    store = Store()
    store.insert(Triple(ALLAH, PARTED, SEA))
    assert store.match(TriplePattern(Literal("x"), Variable("p"), Variable("o"))) == []


def test_frozen_store_rejects_insert():
    store = Store()
    store.insert(Triple(ALLAH, PARTED, SEA))
    store.freeze()
    with pytest.raises(StoreFrozenError):
        store.insert(Triple(SEA, PARTED, ALLAH))
    assert store.frozen


def _mask_patterns(triple: Triple, rng: random.Random):
    """All 8 bound/unbound masks instantiated from a concrete triple."""
    for mask in range(8):
        yield TriplePattern(
            triple.subject if mask & 4 else Variable("s"),
            triple.predicate if mask & 2 else Variable("p"),
            triple.object if mask & 1 else Variable("o"),
        )


def test_match_equals_brute_force_over_all_masks():
    rng = random.Random(2050)
    for _ in range(60):
        triples = rand_store_triples(rng, max_size=200)
        store = Store()
        for t in triples:
            store.insert(t)
        stored = list(store.triples())
        probe = rng.choice(stored) if stored else rand_triple(rng)
        for pattern in _mask_patterns(probe, rng):
            got = store.match(pattern)
            expected = brute_match(stored, pattern)
            assert sorted(map(repr, got)) == sorted(map(repr, expected))


def test_match_never_duplicates_bindings():
    rng = random.Random(7)
    triples = rand_store_triples(rng, max_size=150)
    store = Store()
    for t in triples:
        store.insert(t)
    for pattern in (
        TriplePattern(Variable("s"), Variable("p"), Variable("o")),
        TriplePattern(Variable("s"), Iri("http://example.org/p0"), Variable("o")),
    ):
        out = store.match(pattern)
        assert len({repr(sorted(b.items(), key=lambda kv: kv[0])) for b in out}) == len(out)


def test_audit_after_random_insert_sequence():
    rng = random.Random(1000)
    store = Store()
    for _ in range(1000):
        store.insert(rand_triple(rng))
        if rng.random() < 0.01:
            assert store.audit_indexes()
    assert store.audit_indexes()


def test_audit_empty_store():
    store = Store()
    assert store.size() == 0
    assert store.audit_indexes()


def test_provenance_tracking():
    store = Store()
    t1 = Triple(ALLAH, PARTED, SEA)
    t2 = Triple(SEA, PARTED, ALLAH)
    store.insert(t1)
    store.insert(t2, provenance="inferred")
    assert store.provenance(t1) == "asserted"
    assert store.provenance(t2) == "inferred"
    assert store.asserted() == [t1]
