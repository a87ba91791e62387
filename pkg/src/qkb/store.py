"""Deduplicated in-memory triple store with SPO/POS/OSP indexes.

The store is build-then-freeze: ingestion and inference run in a mutable
phase, queries run against the frozen snapshot. Dict insertion order makes
every lookup deterministic for a given ingestion sequence.
"""

from __future__ import annotations

from typing import Iterator

from .model import Iri, Term, Triple, TriplePattern, Variable

ASSERTED = "asserted"
INFERRED = "inferred"

# variable binding: name -> ground term
BindingSet = dict[str, Term]


class StoreFrozenError(RuntimeError):
    pass


class Store:
    def __init__(self):
        # master map doubles as provenance record, insertion-ordered
        self._triples: dict[Triple, str] = {}
        self._spo: dict[Iri, dict[Iri, dict[Term, None]]] = {}
        self._pos: dict[Iri, dict[Term, dict[Iri, None]]] = {}
        self._osp: dict[Term, dict[Iri, dict[Iri, None]]] = {}
        self._frozen = False
        self.materialized = False
        # reasoner derivation records, keyed by inferred triple
        self.derivations: dict[Triple, "object"] = {}

    # -- mutable phase ------------------------------------------------

    def insert(self, triple: Triple, provenance: str = ASSERTED) -> bool:
        """Add a ground triple; returns True iff it was new."""
        if self._frozen:
            raise StoreFrozenError("store is frozen")
        if triple in self._triples:
            return False
        self._triples[triple] = provenance
        s, p, o = triple.subject, triple.predicate, triple.object
        self._spo.setdefault(s, {}).setdefault(p, {})[o] = None
        self._pos.setdefault(p, {}).setdefault(o, {})[s] = None
        self._osp.setdefault(o, {}).setdefault(s, {})[p] = None
        return True

    def freeze(self) -> "Store":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- reads (valid in either phase) --------------------------------

    def __len__(self) -> int:
        return len(self._triples)

    def size(self) -> int:
        return len(self._triples)

    def contains(self, triple: Triple) -> bool:
        return triple in self._triples

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def triples(self) -> Iterator[Triple]:
        return iter(self._triples)

    def provenance(self, triple: Triple) -> str:
        return self._triples[triple]

    def asserted(self) -> list[Triple]:
        return [t for t, prov in self._triples.items() if prov == ASSERTED]

    def match(self, pattern: TriplePattern) -> list[BindingSet]:
        """All bindings of the pattern's variables against the store.

        A ground pattern that matches yields one empty binding (the truth
        witness demanded by BGP semantics). The index is picked from the
        bound-position mask; repeated variables must bind consistently.
        """
        s, p, o = pattern.subject, pattern.predicate, pattern.object
        sb, pb, ob = (not isinstance(t, Variable) for t in (s, p, o))

        # a literal can never sit in subject/predicate position of data
        if (sb and not isinstance(s, Iri)) or (pb and not isinstance(p, Iri)):
            return []

        out: list[BindingSet] = []
        for triple in self._candidates(s if sb else None, p if pb else None, o if ob else None):
            binding: BindingSet = {}
            if _bind(binding, s, triple.subject) and _bind(binding, p, triple.predicate) and _bind(
                binding, o, triple.object
            ):
                out.append(binding)
        return out

    def _candidates(self, s, p, o) -> Iterator[Triple]:
        if s is not None and p is not None and o is not None:
            t = Triple(s, p, o)
            if t in self._triples:
                yield t
        elif s is not None and p is not None:
            for obj in self._spo.get(s, {}).get(p, {}):
                yield Triple(s, p, obj)
        elif p is not None and o is not None:
            for subj in self._pos.get(p, {}).get(o, {}):
                yield Triple(subj, p, o)
        elif s is not None and o is not None:
            for pred in self._osp.get(o, {}).get(s, {}):
                yield Triple(s, pred, o)
        elif s is not None:
            for pred, objs in self._spo.get(s, {}).items():
                for obj in objs:
                    yield Triple(s, pred, obj)
        elif p is not None:
            for obj, subjs in self._pos.get(p, {}).items():
                for subj in subjs:
                    yield Triple(subj, p, obj)
        elif o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield Triple(subj, pred, o)
        else:
            yield from self._triples

    def audit_indexes(self) -> bool:
        """True iff all three indexes hold exactly the master triple set."""
        master = set(self._triples)
        spo = {
            Triple(s, p, o)
            for s, ps in self._spo.items()
            for p, os_ in ps.items()
            for o in os_
        }
        pos = {
            Triple(s, p, o)
            for p, os_ in self._pos.items()
            for o, ss in os_.items()
            for s in ss
        }
        osp = {
            Triple(s, p, o)
            for o, ss in self._osp.items()
            for s, ps in ss.items()
            for p in ps
        }
        return spo == master and pos == master and osp == master


def _bind(binding: BindingSet, pattern_term, value: Term) -> bool:
    if isinstance(pattern_term, Variable):
        bound = binding.get(pattern_term.name)
        if bound is None:
            binding[pattern_term.name] = value
            return True
        return bound == value
    return pattern_term == value
