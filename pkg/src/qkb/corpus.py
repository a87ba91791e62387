"""Curated Quranic-nature dataset: loading, manifest checking, validation.

A corpus directory holds three Turtle files plus a flat manifest:

    schema.ttl      class hierarchy, property declarations, inverse pair
    verses.ttl      verse individuals with rdfs:comment translation text
    facts.ttl       concept individuals, event facts, hasPart linkage
    manifest.txt    one "file=<path> role=<role> sha256=<hex>" line per
                    file, plus "extension=<s> <p> <o>" triple patterns
                    ('*' wildcards) flagging curated additions
    queries/*.rq    canned queries served by the CLI and endpoint

The packaged default corpus lives next to this module under data/.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from .model import (
    Finding,
    Iri,
    Literal,
    OWL_ANNOTATION_PROPERTY,
    OWL_CLASS,
    OWL_INVERSE_OF,
    OWL_OBJECT_PROPERTY,
    PrefixMap,
    QREG_NS,
    RDF_TYPE,
    RDFS_COMMENT,
    RDFS_SUBCLASS_OF,
    Schema,
    Term,
    Triple,
    TriplePattern,
    ValidationReport,
    Variable,
    default_prefixes,
)
from .reasoner import materialize
from .store import Store
from .turtle import ParseError, parse_document

DEFAULT_DATA_DIR = Path(__file__).parent / "data"

_VERSE_ID_RE = re.compile(r"^\d+:\d+$")

QURANIC_NATURE = Iri(QREG_NS + "QuranicNature")
QURAN_VERSE = Iri(QREG_NS + "QuranVerse")
HAS_PART = Iri(QREG_NS + "hasPart")
IS_PART_OF = Iri(QREG_NS + "isPartOf")
SPECIAL_CLASSES = frozenset(
    {Iri(QREG_NS + "Allah"), Iri(QREG_NS + "City"), Iri(QREG_NS + "HolyBook")}
)


class CorpusError(Exception):
    """Corpus files are missing, unreadable, corrupt, or invalid."""


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    role: str
    sha256: str


@dataclass
class Manifest:
    files: list[ManifestEntry]
    extension_patterns: list[tuple[str, str, str]]

    def is_extension(self, triple: Triple, prefixes: PrefixMap) -> bool:
        """True iff the triple matches any curated-addition pattern."""
        s = prefixes.compact(triple.subject)
        p = prefixes.compact(triple.predicate)
        o = prefixes.compact(triple.object) if isinstance(triple.object, Iri) else None
        for ps, pp, po in self.extension_patterns:
            if ps != "*" and ps != s:
                continue
            if pp != "*" and pp != p:
                continue
            if po != "*" and po != o:
                continue
            return True
        return False


@dataclass
class VerseRecord:
    id: Iri
    chapter: int
    verse: int
    text: str
    concepts: list[Iri] = field(default_factory=list)


@dataclass
class Corpus:
    store: Store
    schema: Schema
    prefixes: PrefixMap
    manifest: Manifest
    queries: dict[str, str]
    data_dir: Path


def parse_manifest(text: str) -> Manifest:
    files: list[ManifestEntry] = []
    patterns: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0].startswith("file="):
            entry: dict[str, str] = {}
            for tok in tokens:
                if "=" not in tok:
                    raise CorpusError(f"manifest line {lineno}: malformed token {tok!r}")
                key, value = tok.split("=", 1)
                entry[key] = value
            missing = {"file", "role", "sha256"} - set(entry)
            if missing:
                raise CorpusError(f"manifest line {lineno}: missing {sorted(missing)}")
            files.append(ManifestEntry(entry["file"], entry["role"], entry["sha256"]))
        elif tokens[0].startswith("extension="):
            parts = [tokens[0][len("extension="):]] + tokens[1:]
            if len(parts) != 3:
                raise CorpusError(
                    f"manifest line {lineno}: extension pattern needs subject predicate object"
                )
            patterns.append((parts[0], parts[1], parts[2]))
        else:
            raise CorpusError(f"manifest line {lineno}: unrecognized entry {tokens[0]!r}")
    return Manifest(files, patterns)


def schema_from_store(store: Store) -> Schema:
    """Derive the declared Schema from the axiom triples in the store."""
    classes = set()
    object_properties = set()
    annotation_properties = set()
    subclass_axioms = set()
    inverse_pairs = set()
    for t in store.triples():
        if t.predicate == RDF_TYPE:
            if t.object == OWL_CLASS:
                classes.add(t.subject)
            elif t.object == OWL_OBJECT_PROPERTY:
                object_properties.add(t.subject)
            elif t.object == OWL_ANNOTATION_PROPERTY:
                annotation_properties.add(t.subject)
        elif t.predicate == RDFS_SUBCLASS_OF and isinstance(t.object, Iri):
            subclass_axioms.add((t.subject, t.object))
        elif t.predicate == OWL_INVERSE_OF and isinstance(t.object, Iri):
            inverse_pairs.add(frozenset({t.subject, t.object}))
    return Schema(
        classes=frozenset(classes),
        subclass_axioms=frozenset(subclass_axioms),
        object_properties=frozenset(object_properties),
        inverse_pairs=frozenset(inverse_pairs),
        annotation_properties=frozenset(annotation_properties),
    )


def local_name(iri: Iri) -> str:
    if iri.value.startswith(QREG_NS):
        return iri.value[len(QREG_NS):]
    return iri.value


def _types_of(store: Store, term: Iri) -> set[Iri]:
    return {
        b["c"]
        for b in store.match(TriplePattern(term, RDF_TYPE, Variable("c")))
        if isinstance(b["c"], Iri)
    }


def validate_corpus(store: Store, schema: Schema) -> ValidationReport:
    """Structural checks over the loaded corpus (pre-materialization ok):

    (a) hasPart subjects are typed QuranVerse
    (b) hasPart objects are typed under QuranicNature or a special class
    (c) verse local names look like "chapter:verse"
    (d) every individual referenced by an object-property fact has a type
    (e) every verse carries exactly one rdfs:comment
    """
    findings: list[Finding] = []

    def reaches_allowed(cls: Iri) -> bool:
        if cls == QURANIC_NATURE or cls in SPECIAL_CLASSES:
            return True
        up = schema.ancestors(cls)
        return QURANIC_NATURE in up or bool(up & SPECIAL_CLASSES)

    has_part_facts = store.match(TriplePattern(Variable("s"), HAS_PART, Variable("o")))
    for b in has_part_facts:
        subj, obj = b["s"], b["o"]
        if not isinstance(obj, Iri):
            findings.append(
                Finding("haspart-object-literal", f"hasPart object of {local_name(subj)} is a literal")
            )
            continue
        if QURAN_VERSE not in _types_of(store, subj):
            findings.append(
                Finding(
                    "haspart-subject-not-verse",
                    f"hasPart subject {local_name(subj)} is not typed QuranVerse",
                )
            )
        if not any(reaches_allowed(c) for c in _types_of(store, obj)):
            findings.append(
                Finding(
                    "haspart-object-unclassified",
                    f"hasPart object {local_name(obj)} is not typed under "
                    "QuranicNature or a special class",
                )
            )

    verses = [
        b["v"]
        for b in store.match(TriplePattern(Variable("v"), RDF_TYPE, QURAN_VERSE))
        if isinstance(b["v"], Iri)
    ]
    for verse in verses:
        name = local_name(verse)
        if not _VERSE_ID_RE.match(name):
            findings.append(
                Finding("verse-id-format", f"verse id {name!r} does not match chapter:verse")
            )
        comments = store.match(TriplePattern(verse, RDFS_COMMENT, Variable("t")))
        if len(comments) != 1:
            findings.append(
                Finding(
                    "verse-comment-count",
                    f"verse {name} has {len(comments)} rdfs:comment values (expected 1)",
                )
            )

    individuals: dict[Iri, None] = {}
    for prop in schema.object_properties:
        for b in store.match(TriplePattern(Variable("s"), prop, Variable("o"))):
            individuals.setdefault(b["s"])
            if isinstance(b["o"], Iri):
                individuals.setdefault(b["o"])
    for ind in individuals:
        if not _types_of(store, ind):
            findings.append(Finding("untyped-individual", f"{local_name(ind)} has no rdf:type"))

    return ValidationReport(tuple(findings))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_corpus(
    data_dir: Path | str | None = None,
    materialize_store: bool = True,
    validate: bool = True,
) -> Corpus:
    """Parse, check, optionally validate and materialize, then freeze.

    Raises CorpusError with file/line context on any failure.
    """
    root = Path(data_dir) if data_dir is not None else DEFAULT_DATA_DIR
    if not root.is_dir():
        raise CorpusError(f"data directory not found: {root}")
    manifest_path = root / "manifest.txt"
    if not manifest_path.is_file():
        raise CorpusError(f"manifest not found: {manifest_path}")
    manifest = parse_manifest(manifest_path.read_text(encoding="utf-8"))

    store = Store()
    prefixes = default_prefixes()
    for entry in manifest.files:
        path = root / entry.path
        if not path.is_file():
            raise CorpusError(f"corpus file missing: {path}")
        actual = _sha256(path)
        if actual != entry.sha256:
            raise CorpusError(
                f"checksum mismatch for {entry.path}: manifest {entry.sha256[:12]}…, "
                f"file {actual[:12]}…"
            )
        try:
            doc = parse_document(path.read_text(encoding="utf-8"))
        except ParseError as e:
            raise CorpusError(f"{path}: {e}") from e
        for label, ns in doc.prefixes:
            prefixes.bind(label, ns)
        for triple in doc.triples:
            store.insert(triple)

    schema = schema_from_store(store)
    if validate:
        report = validate_corpus(store, schema)
        if not report.ok:
            raise CorpusError(f"corpus validation failed:\n{report}")

    if materialize_store:
        materialize(store, schema)
    else:
        store.freeze()

    queries = load_queries(root / "queries")
    return Corpus(store, schema, prefixes, manifest, queries, root)


def load_queries(queries_dir: Path) -> dict[str, str]:
    out: dict[str, str] = {}
    if queries_dir.is_dir():
        for path in sorted(queries_dir.glob("*.rq")):
            out[path.stem] = path.read_text(encoding="utf-8")
    return out


def verse_records(store: Store, prefixes: PrefixMap) -> list[VerseRecord]:
    """Assemble one record per verse individual from the loaded triples."""
    records = []
    for b in store.match(TriplePattern(Variable("v"), RDF_TYPE, QURAN_VERSE)):
        verse = b["v"]
        if not isinstance(verse, Iri):
            continue
        name = local_name(verse)
        if not _VERSE_ID_RE.match(name):
            continue
        chapter, number = (int(part) for part in name.split(":"))
        comments = store.match(TriplePattern(verse, RDFS_COMMENT, Variable("t")))
        text = comments[0]["t"].text if comments and isinstance(comments[0]["t"], Literal) else ""
        concepts = [
            b2["c"]
            for b2 in store.match(TriplePattern(verse, HAS_PART, Variable("c")))
            if isinstance(b2["c"], Iri)
        ]
        records.append(VerseRecord(verse, chapter, number, text, concepts))
    records.sort(key=lambda r: (r.chapter, r.verse))
    return records
