"""Core RDF data types: terms, triples, prefix maps, and the ontology schema.

Everything here is an immutable value object, safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
QREG_NS = "http://www.semanticweb.org/ontologies/2014/9/Ontology141234814506#"

_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:\S+$")
_LANG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")
_VAR_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_PREFIX_LABEL_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_-]*)?$")
# Turtle 1.1 style local part, trimmed to what the corpus needs: leading
# digits and interior ':' are legal so verse names like "2:50" resolve.
PN_LOCAL_RE = re.compile(r"^[A-Za-z0-9_:][A-Za-z0-9_:-]*$|^$")


class ModelError(ValueError):
    """Violation of a data-model invariant."""


class UnknownPrefix(ModelError):
    def __init__(self, prefix: str):
        super().__init__(f"unknown prefix {prefix!r}")
        self.prefix = prefix


class MalformedName(ModelError):
    pass


@dataclass(frozen=True)
class Iri:
    """An absolute IRI. Equality is plain string equality."""

    value: str

    def __post_init__(self):
        v = self.value
        if not v or any(c.isspace() for c in v):
            raise ModelError(f"invalid IRI: {v!r}")
        if "://" not in v and not _IRI_RE.match(v):
            raise ModelError(f"IRI has no scheme: {v!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    """A literal term: plain, language-tagged, or datatyped (not both)."""

    text: str
    lang: str | None = None
    datatype: Iri | None = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise ModelError("literal cannot carry both lang and datatype")
        if self.lang is not None and not _LANG_RE.match(self.lang):
            raise ModelError(f"invalid language tag: {self.lang!r}")


@dataclass(frozen=True)
class Variable:
    """A query variable; only ever appears in patterns, never in data."""

    name: str

    def __post_init__(self):
        if not _VAR_RE.match(self.name):
            raise ModelError(f"invalid variable name: {self.name!r}")


Term = Union[Iri, Literal]
PatternTerm = Union[Iri, Literal, Variable]


@dataclass(frozen=True)
class Triple:
    """A ground statement. Subject and predicate are IRIs, object any term."""

    subject: Iri
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, Iri) or not isinstance(self.predicate, Iri):
            raise ModelError("triple subject and predicate must be IRIs")
        if isinstance(self.object, Variable):
            raise ModelError("triple object must be ground")


@dataclass(frozen=True)
class TriplePattern:
    """Like a Triple but any position may hold a Variable (or all ground)."""

    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def variables(self) -> tuple[str, ...]:
        """Variable names in subject, predicate, object order, deduplicated."""
        seen: dict[str, None] = {}
        for t in (self.subject, self.predicate, self.object):
            if isinstance(t, Variable):
                seen.setdefault(t.name)
        return tuple(seen)


# Well-known vocabulary the engine interprets.
RDF_TYPE = Iri(RDF_NS + "type")
RDFS_SUBCLASS_OF = Iri(RDFS_NS + "subClassOf")
RDFS_COMMENT = Iri(RDFS_NS + "comment")
OWL_INVERSE_OF = Iri(OWL_NS + "inverseOf")
OWL_CLASS = Iri(OWL_NS + "Class")
OWL_OBJECT_PROPERTY = Iri(OWL_NS + "ObjectProperty")
OWL_ANNOTATION_PROPERTY = Iri(OWL_NS + "AnnotationProperty")


class PrefixMap:
    """Mapping from prefix labels to namespace IRIs, with expand/compact.

    The empty string is a legal label (the default namespace).
    """

    def __init__(self, entries: dict[str, Iri] | None = None):
        self._map: dict[str, Iri] = {}
        if entries:
            for label, ns in entries.items():
                self.bind(label, ns)

    def bind(self, label: str, namespace: Iri) -> None:
        if not _PREFIX_LABEL_RE.match(label):
            raise ModelError(f"invalid prefix label: {label!r}")
        self._map[label] = namespace

    def __contains__(self, label: str) -> bool:
        return label in self._map

    def __iter__(self):
        return iter(self._map.items())

    def namespace(self, label: str) -> Iri:
        if label not in self._map:
            raise UnknownPrefix(label)
        return self._map[label]

    def expand(self, prefixed_name: str) -> Iri:
        """Resolve "pfx:local" against the registered namespaces."""
        if ":" not in prefixed_name:
            raise MalformedName(f"not a prefixed name: {prefixed_name!r}")
        label, local = prefixed_name.split(":", 1)
        if not PN_LOCAL_RE.match(local):
            raise MalformedName(f"illegal local part: {local!r}")
        if label not in self._map:
            raise UnknownPrefix(label)
        return Iri(self._map[label].value + local)

    def compact(self, iri: Iri) -> str:
        """Replace the longest matching namespace with its label.

        Falls back to "<iri>" when no registered namespace is a prefix.
        """
        best: tuple[str, str] | None = None
        for label, ns in self._map.items():
            nv = ns.value
            if iri.value.startswith(nv) and (best is None or len(nv) > len(best[1])):
                local = iri.value[len(nv):]
                if PN_LOCAL_RE.match(local):
                    best = (label, nv)
        if best is None:
            return f"<{iri.value}>"
        label, nv = best
        return f"{label}:{iri.value[len(nv):]}"

    def copy(self) -> "PrefixMap":
        return PrefixMap(dict(self._map))


def default_prefixes() -> PrefixMap:
    """The prefix set every corpus file and canned query assumes."""
    return PrefixMap(
        {
            "rdf": Iri(RDF_NS),
            "rdfs": Iri(RDFS_NS),
            "owl": Iri(OWL_NS),
            "xsd": Iri(XSD_NS),
            "qreg": Iri(QREG_NS),
        }
    )


@dataclass(frozen=True)
class Finding:
    """One validation problem; code is a stable machine-readable tag."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.findings

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(f) for f in self.findings)


@dataclass(frozen=True)
class Schema:
    """Declared vocabulary: classes, subclass axioms, properties, inverses."""

    classes: frozenset[Iri] = frozenset()
    subclass_axioms: frozenset[tuple[Iri, Iri]] = frozenset()
    object_properties: frozenset[Iri] = frozenset()
    inverse_pairs: frozenset[frozenset[Iri]] = frozenset()
    annotation_properties: frozenset[Iri] = frozenset()

    def parents(self, cls: Iri) -> set[Iri]:
        return {p for (c, p) in self.subclass_axioms if c == cls}

    def children(self, cls: Iri) -> set[Iri]:
        return {c for (c, p) in self.subclass_axioms if p == cls}

    def ancestors(self, cls: Iri) -> set[Iri]:
        """All classes reachable upward from cls (not including cls)."""
        out: set[Iri] = set()
        stack = [cls]
        while stack:
            for p in self.parents(stack.pop()):
                if p not in out:
                    out.add(p)
                    stack.append(p)
        return out

    def roots(self) -> set[Iri]:
        subs = {c for (c, _) in self.subclass_axioms}
        return {c for c in self.classes if c not in subs}


def schema_closure_check(schema: Schema) -> ValidationReport:
    """Check the Schema invariants; an empty report means valid."""
    findings: list[Finding] = []
    for child, parent in sorted(schema.subclass_axioms, key=lambda a: (a[0].value, a[1].value)):
        for end in (child, parent):
            if end not in schema.classes:
                findings.append(
                    Finding("undeclared-class", f"subclass axiom uses undeclared class {end}")
                )
    for pair in schema.inverse_pairs:
        for p in sorted(pair, key=lambda i: i.value):
            if p not in schema.object_properties:
                findings.append(
                    Finding("undeclared-property", f"inverse pair uses undeclared property {p}")
                )
    findings.extend(_subclass_cycles(schema))
    return ValidationReport(tuple(findings))


def _subclass_cycles(schema: Schema) -> list[Finding]:
    # Iterative DFS three-color cycle detection over the subclass digraph.
    edges: dict[Iri, list[Iri]] = {}
    for c, p in schema.subclass_axioms:
        edges.setdefault(c, []).append(p)
    for k in edges:
        edges[k].sort(key=lambda i: i.value)

    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[Iri, int] = {}
    findings: list[Finding] = []

    for start in sorted(edges, key=lambda i: i.value):
        if color.get(start, WHITE) != WHITE:
            continue
        stack: list[tuple[Iri, int]] = [(start, 0)]
        color[start] = GRAY
        path = [start]
        while stack:
            node, i = stack[-1]
            succ = edges.get(node, [])
            if i < len(succ):
                stack[-1] = (node, i + 1)
                nxt = succ[i]
                st = color.get(nxt, WHITE)
                if st == GRAY:
                    cyc = path[path.index(nxt):] + [nxt]
                    findings.append(
                        Finding(
                            "subclass-cycle",
                            "subclass cycle: " + " -> ".join(c.value for c in cyc),
                        )
                    )
                elif st == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, 0))
                    path.append(nxt)
            else:
                color[node] = BLACK
                stack.pop()
                path.pop()
    return findings
