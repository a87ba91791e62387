"""Forward-chaining materialization of the inference rules the ontology
relies on: inverse-property completion, subclass transitivity, and type
inheritance.

Axioms live in the store as ordinary triples (rdfs:subClassOf,
owl:inverseOf), so the rules read one uniform fact base:

    inv-sym       (p owl:inverseOf q)             => (q owl:inverseOf p)
    inv-prop      (s p o), (p owl:inverseOf q)    => (o q s)
    sc-trans      (a subClassOf b), (b subClassOf c) => (a subClassOf c)
    type-inherit  (i type c), (c subClassOf d)    => (i type d)

Evaluation is semi-naive: each round only re-fires rules against the
previous round's delta, which is tested equal to the naive fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    Iri,
    OWL_INVERSE_OF,
    RDF_TYPE,
    RDFS_SUBCLASS_OF,
    Schema,
    Triple,
    TriplePattern,
    Variable,
    schema_closure_check,
)
from .store import ASSERTED, INFERRED, Store, StoreFrozenError

INV_SYM = "inv-sym"
INV_PROP = "inv-prop"
SC_TRANS = "sc-trans"
TYPE_INHERIT = "type-inherit"


class SchemaInvalid(ValueError):
    def __init__(self, report):
        super().__init__(f"schema is invalid:\n{report}")
        self.report = report


class NotInStore(KeyError):
    pass


@dataclass(frozen=True)
class RuleTrace:
    """One rule application: conclusion follows from premises under rule_id."""

    rule_id: str
    premises: tuple[Triple, ...]
    conclusion: Triple


def materialize(store: Store, schema: Schema) -> Store:
    """Extend the store to its fixpoint under the four rules and freeze it.

    Re-materializing an already materialized store is a no-op, so the
    operation is idempotent. No new IRIs are ever minted: every derived
    triple recombines terms already present, so the fixpoint is finite.
    """
    if store.frozen:
        if store.materialized:
            return store
        raise StoreFrozenError("cannot materialize a frozen, unmaterialized store")
    report = schema_closure_check(schema)
    if not report.ok:
        raise SchemaInvalid(report)

    delta = list(store.triples())
    while delta:
        produced: list[RuleTrace] = []
        for t in delta:
            _fire(store, t, produced)
        delta = []
        for trace in produced:
            if store.insert(trace.conclusion, INFERRED):
                store.derivations[trace.conclusion] = trace
                delta.append(trace.conclusion)
    store.materialized = True
    return store.freeze()


def _fire(store: Store, t: Triple, out: list[RuleTrace]) -> None:
    """Emit every rule conclusion with t as one premise (other premises
    joined against the full store, per semi-naive evaluation)."""
    s, p, o = t.subject, t.predicate, t.object

    if p == OWL_INVERSE_OF and isinstance(o, Iri):
        # inv-sym: register the opposite direction
        out.append(RuleTrace(INV_SYM, (t,), Triple(o, OWL_INVERSE_OF, s)))
        # inv-prop, axiom as the new premise: replay existing facts of s
        for b in store.match(TriplePattern(Variable("x"), s, Variable("y"))):
            x, y = b["x"], b["y"]
            if isinstance(y, Iri):
                out.append(
                    RuleTrace(INV_PROP, (Triple(x, s, y), t), Triple(y, o, x))
                )

    if p == RDFS_SUBCLASS_OF and isinstance(o, Iri):
        # sc-trans in both join directions
        for b in store.match(TriplePattern(o, RDFS_SUBCLASS_OF, Variable("c"))):
            c = b["c"]
            if isinstance(c, Iri):
                out.append(
                    RuleTrace(SC_TRANS, (t, Triple(o, RDFS_SUBCLASS_OF, c)), Triple(s, RDFS_SUBCLASS_OF, c))
                )
        for b in store.match(TriplePattern(Variable("z"), RDFS_SUBCLASS_OF, s)):
            z = b["z"]
            out.append(
                RuleTrace(SC_TRANS, (Triple(z, RDFS_SUBCLASS_OF, s), t), Triple(z, RDFS_SUBCLASS_OF, o))
            )
        # type-inherit, axiom as the new premise
        for b in store.match(TriplePattern(Variable("i"), RDF_TYPE, s)):
            out.append(
                RuleTrace(TYPE_INHERIT, (Triple(b["i"], RDF_TYPE, s), t), Triple(b["i"], RDF_TYPE, o))
            )

    if p == RDF_TYPE and isinstance(o, Iri):
        # type-inherit, instance typing as the new premise
        for b in store.match(TriplePattern(o, RDFS_SUBCLASS_OF, Variable("d"))):
            d = b["d"]
            if isinstance(d, Iri):
                out.append(
                    RuleTrace(TYPE_INHERIT, (t, Triple(o, RDFS_SUBCLASS_OF, d)), Triple(s, RDF_TYPE, d))
                )

    # inv-prop, fact as the new premise
    if isinstance(o, Iri):
        for b in store.match(TriplePattern(p, OWL_INVERSE_OF, Variable("q"))):
            q = b["q"]
            if isinstance(q, Iri):
                out.append(RuleTrace(INV_PROP, (t, Triple(p, OWL_INVERSE_OF, q)), Triple(o, q, s)))


def explain(store: Store, triple: Triple) -> list[RuleTrace]:
    """One derivation chain ending at the triple; asserted triples get [].

    The chain lists rule applications in dependency order: every premise of
    every step is either asserted or concluded by an earlier step. Each
    inferred triple keeps the first derivation that produced it, which the
    round-by-round evaluation makes a minimal-length one.
    """
    if triple not in store:
        raise NotInStore(triple)
    if store.provenance(triple) == ASSERTED:
        return []

    chain: list[RuleTrace] = []
    emitted: set[Triple] = set()

    def visit(t: Triple) -> None:
        trace: RuleTrace = store.derivations[t]
        for premise in trace.premises:
            if store.provenance(premise) == INFERRED and premise not in emitted:
                visit(premise)
        if t not in emitted:
            emitted.add(t)
            chain.append(trace)

    visit(triple)
    return chain
