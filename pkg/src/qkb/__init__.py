"""qkb: an embedded semantic knowledge base for the Quranic nature ontology.

Typical use:

    from qkb import load_corpus, parse_query, evaluate

    corpus = load_corpus()
    solutions = evaluate(parse_query(corpus.queries["q1"]), corpus.store)
"""

from .corpus import Corpus, CorpusError, load_corpus, validate_corpus, verse_records
from .model import (
    Iri,
    Literal,
    PrefixMap,
    Schema,
    Triple,
    TriplePattern,
    ValidationReport,
    Variable,
    default_prefixes,
    schema_closure_check,
)
from .reasoner import RuleTrace, SchemaInvalid, explain, materialize
from .results import serialize_results
from .sparql import QueryAst, SolutionSequence, evaluate, parse_query
from .store import Store
from .turtle import ParseError, ParsedDocument, parse_document, serialize

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "CorpusError",
    "Iri",
    "Literal",
    "ParseError",
    "ParsedDocument",
    "PrefixMap",
    "QueryAst",
    "RuleTrace",
    "Schema",
    "SchemaInvalid",
    "SolutionSequence",
    "Store",
    "Triple",
    "TriplePattern",
    "ValidationReport",
    "Variable",
    "default_prefixes",
    "evaluate",
    "explain",
    "load_corpus",
    "materialize",
    "parse_document",
    "parse_query",
    "schema_closure_check",
    "serialize",
    "serialize_results",
    "validate_corpus",
    "verse_records",
]
