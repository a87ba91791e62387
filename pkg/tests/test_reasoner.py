import random

import pytest

from oracles import naive_closure, rand_reasoner_instance
from qkb.model import (
    Iri,
    OWL_INVERSE_OF,
    QREG_NS,
    RDF_TYPE,
    RDFS_SUBCLASS_OF,
    Schema,
    Triple,
    TriplePattern,
    Variable,
)
from qkb.reasoner import (
    INV_PROP,
    SC_TRANS,
    TYPE_INHERIT,
    NotInStore,
    SchemaInvalid,
    explain,
    materialize,
)
from qkb.store import ASSERTED, INFERRED, Store

NS = QREG_NS


def iri(name: str) -> Iri:
    return Iri(NS + name)


def _store(*triples: Triple) -> Store:
    store = Store()
    for t in triples:
        store.insert(t)
    return store


HAS_PART = iri("hasPart")
IS_PART_OF = iri("isPartOf")

INVERSE_SCHEMA = Schema(
    object_properties=frozenset({HAS_PART, IS_PART_OF}),
    inverse_pairs=frozenset({frozenset({HAS_PART, IS_PART_OF})}),
)

SEA_SCHEMA = Schema(
    classes=frozenset({iri("Sea"), iri("Landscape"), iri("QuranicNature")}),
    subclass_axioms=frozenset(
        {(iri("Sea"), iri("Landscape")), (iri("Landscape"), iri("QuranicNature"))}
    ),
)


def _sea_store() -> Store:
    return _store(
        Triple(iri("Sea"), RDFS_SUBCLASS_OF, iri("Landscape")),
        Triple(iri("Landscape"), RDFS_SUBCLASS_OF, iri("QuranicNature")),
        Triple(iri("Sea"), RDF_TYPE, iri("Sea")),
    )


def test_inverse_property_completion():
    store = _store(
        Triple(HAS_PART, OWL_INVERSE_OF, IS_PART_OF),
        Triple(iri("2:50"), HAS_PART, iri("Allah")),
    )
    materialize(store, INVERSE_SCHEMA)
    assert Triple(iri("Allah"), IS_PART_OF, iri("2:50")) in store
    assert store.provenance(Triple(iri("Allah"), IS_PART_OF, iri("2:50"))) == INFERRED


def test_type_inheritance_through_subclass_chain():
    store = _sea_store()
    materialize(store, SEA_SCHEMA)
    assert Triple(iri("Sea"), RDF_TYPE, iri("QuranicNature")) in store
    assert Triple(iri("Sea"), RDF_TYPE, iri("Landscape")) in store
    assert Triple(iri("Sea"), RDFS_SUBCLASS_OF, iri("QuranicNature")) in store


def test_materialize_is_idempotent():
    first = materialize(_sea_store(), SEA_SCHEMA)
    snapshot = set(first.triples())
    again = materialize(first, SEA_SCHEMA)
    assert again is first
    assert set(again.triples()) == snapshot


def test_materialize_rejects_invalid_schema():
    bad = Schema(
        classes=frozenset({iri("A"), iri("B")}),
        subclass_axioms=frozenset({(iri("A"), iri("B")), (iri("B"), iri("A"))}),
    )
    with pytest.raises(SchemaInvalid):
        materialize(_store(), bad)


def test_asserted_triples_survive():
    store = _sea_store()
    asserted = set(store.triples())
    materialize(store, SEA_SCHEMA)
    assert asserted <= set(store.triples())
    for t in asserted:
        assert store.provenance(t) == ASSERTED


def test_explain_single_step_inverse():
    store = _store(
        Triple(HAS_PART, OWL_INVERSE_OF, IS_PART_OF),
        Triple(iri("2:50"), HAS_PART, iri("Allah")),
    )
    materialize(store, INVERSE_SCHEMA)
    chain = explain(store, Triple(iri("Allah"), IS_PART_OF, iri("2:50")))
    assert len(chain) == 1
    assert chain[0].rule_id == INV_PROP
    assert Triple(iri("2:50"), HAS_PART, iri("Allah")) in chain[0].premises


def test_explain_asserted_is_empty():
    store = _sea_store()
    materialize(store, SEA_SCHEMA)
    assert explain(store, Triple(iri("Sea"), RDFS_SUBCLASS_OF, iri("Landscape"))) == []


def test_explain_missing_triple():
    store = materialize(_sea_store(), SEA_SCHEMA)
    with pytest.raises(NotInStore):
        explain(store, Triple(iri("Sea"), RDF_TYPE, iri("Weather")))


def test_explain_two_step_chain_matches_hand_computation():
    store = _sea_store()
    materialize(store, SEA_SCHEMA)
    target = Triple(iri("Sea"), RDF_TYPE, iri("QuranicNature"))
    chain = explain(store, target)

    # hand-computed: two rounds are necessary and sufficient
    assert len(chain) == 2
    assert chain[0].rule_id == SC_TRANS
    assert chain[0].conclusion == Triple(iri("Sea"), RDFS_SUBCLASS_OF, iri("QuranicNature"))
    assert chain[1].rule_id == TYPE_INHERIT
    assert chain[1].conclusion == target

    # soundness of the chain: every premise is asserted or proved earlier
    proved = set()
    for trace in chain:
        for premise in trace.premises:
            assert store.provenance(premise) == ASSERTED or premise in proved
        proved.add(trace.conclusion)


def test_semi_naive_equals_naive_fixpoint_on_random_instances():
    rng = random.Random(314159)
    for _ in range(60):
        store, schema = rand_reasoner_instance(rng)
        asserted = set(store.triples())
        materialize(store, schema)
        assert set(store.triples()) == naive_closure(asserted)


def test_symmetry_of_inverse_pairs_on_random_instances():
    rng = random.Random(653)
    for _ in range(30):
        store, schema = rand_reasoner_instance(rng)
        materialize(store, schema)
        for pair in schema.inverse_pairs:
            members = sorted(pair, key=lambda i: i.value)
            p, q = members[0], members[-1]
            for b in store.match(TriplePattern(Variable("s"), p, Variable("o"))):
                if isinstance(b["o"], Iri):
                    assert Triple(b["o"], q, b["s"]) in store
            for b in store.match(TriplePattern(Variable("s"), q, Variable("o"))):
                if isinstance(b["o"], Iri):
                    assert Triple(b["o"], p, b["s"]) in store


def test_monotonicity_and_termination_bound_on_random_instances():
    rng = random.Random(777)
    for _ in range(30):
        store, schema = rand_reasoner_instance(rng)
        asserted = set(store.triples())
        materialize(store, schema)
        closed = set(store.triples())
        assert asserted <= closed
        terms: set = set()
        predicates: set = set()
        for t in closed:
            terms.update({t.subject, t.predicate, t.object})
            predicates.add(t.predicate)
        assert len(closed) <= len(terms) * len(predicates) * len(terms)


def test_inverse_axiom_itself_is_symmetrized():
    store = _store(Triple(HAS_PART, OWL_INVERSE_OF, IS_PART_OF))
    materialize(store, INVERSE_SCHEMA)
    assert Triple(IS_PART_OF, OWL_INVERSE_OF, HAS_PART) in store


def test_self_inverse_property_acts_symmetric():
    adjacent = iri("adjacentTo")
    schema = Schema(
        object_properties=frozenset({adjacent}),
        inverse_pairs=frozenset({frozenset({adjacent})}),
    )
    store = _store(
        Triple(adjacent, OWL_INVERSE_OF, adjacent),
        Triple(iri("a"), adjacent, iri("b")),
    )
    materialize(store, schema)
    assert Triple(iri("b"), adjacent, iri("a")) in store
