"""Solution-sequence serializers: W3C results JSON, results XML, and TSV.

JSON and XML render IRIs in full; TSV compacts them against a prefix map
(matching the tabular displays people actually read).
"""

from __future__ import annotations

import json

from .model import Iri, Literal, PrefixMap, Term
from .sparql import SolutionSequence

MEDIA_TYPE_JSON = "application/sparql-results+json"
MEDIA_TYPE_XML = "application/sparql-results+xml"
MEDIA_TYPE_TSV = "text/tab-separated-values"

FORMATS = ("json", "xml", "tsv")


def serialize_results(solutions: SolutionSequence, format: str, prefixes: PrefixMap | None = None) -> str:
    if format == "json":
        return to_json(solutions)
    if format == "xml":
        return to_xml(solutions)
    if format == "tsv":
        return to_tsv(solutions, prefixes or PrefixMap())
    raise ValueError(f"unknown result format {format!r} (expected one of {FORMATS})")


def _json_term(term: Term) -> dict:
    if isinstance(term, Iri):
        return {"type": "uri", "value": term.value}
    entry: dict = {"type": "literal", "value": term.text}
    if term.lang:
        entry["xml:lang"] = term.lang
    if term.datatype:
        entry["datatype"] = term.datatype.value
    return entry


def to_json(solutions: SolutionSequence) -> str:
    doc = {
        "head": {"vars": list(solutions.vars)},
        "results": {
            "bindings": [
                {name: _json_term(row[name]) for name in solutions.vars if name in row}
                for row in solutions.rows
            ]
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _xml_escape(text: str, quote: bool = False) -> str:
    text = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    if quote:
        text = text.replace('"', "&quot;")
    return text


def to_xml(solutions: SolutionSequence) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<sparql xmlns="http://www.w3.org/2005/sparql-results#">',
        "  <head>",
    ]
    for name in solutions.vars:
        lines.append(f'    <variable name="{_xml_escape(name, quote=True)}"/>')
    lines.append("  </head>")
    lines.append("  <results>")
    for row in solutions.rows:
        lines.append("    <result>")
        for name in solutions.vars:
            if name not in row:
                continue
            term = row[name]
            lines.append(f'      <binding name="{_xml_escape(name, quote=True)}">')
            if isinstance(term, Iri):
                lines.append(f"        <uri>{_xml_escape(term.value)}</uri>")
            else:
                attrs = ""
                if term.lang:
                    attrs = f' xml:lang="{_xml_escape(term.lang, quote=True)}"'
                elif term.datatype:
                    attrs = f' datatype="{_xml_escape(term.datatype.value, quote=True)}"'
                lines.append(f"        <literal{attrs}>{_xml_escape(term.text)}</literal>")
            lines.append("      </binding>")
        lines.append("    </result>")
    lines.append("  </results>")
    lines.append("</sparql>")
    return "\n".join(lines) + "\n"


def _tsv_term(term: Term, prefixes: PrefixMap) -> str:
    if isinstance(term, Iri):
        return prefixes.compact(term)
    text = term.text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace('"', '\\"')
    rendered = f'"{text}"'
    if term.lang:
        return f"{rendered}@{term.lang}"
    if term.datatype:
        return f"{rendered}^^{prefixes.compact(term.datatype)}"
    return rendered


def to_tsv(solutions: SolutionSequence, prefixes: PrefixMap) -> str:
    lines = ["\t".join(f"?{name}" for name in solutions.vars)]
    for row in solutions.rows:
        lines.append(
            "\t".join(
                _tsv_term(row[name], prefixes) if name in row else "" for name in solutions.vars
            )
        )
    return "\n".join(lines) + "\n"
