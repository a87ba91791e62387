"""qkb command line: load, validate, query, export, serve.

Exit codes are a stable contract: 0 success, 1 validation findings,
2 query syntax error, 3 load/IO failure, 4 port bind failure.
"""

from __future__ import annotations

import argparse
import os
import shutil
import sys
from pathlib import Path

from .corpus import CorpusError, load_corpus, validate_corpus
from .model import Iri, Literal, PrefixMap
from .results import serialize_results
from .sparql import SolutionSequence, evaluate, parse_query
from .turtle import ParseError, serialize

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_SYNTAX = 2
EXIT_LOAD = 3
EXIT_BIND = 4

LITERAL_DISPLAY_LIMIT = 60


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkb", description="Quranic nature knowledge base engine"
    )
    parser.add_argument(
        "--data",
        metavar="DIR",
        default=os.environ.get("QKB_DATA_DIR"),
        help="corpus directory (default: QKB_DATA_DIR or the packaged corpus)",
    )
    parser.add_argument(
        "--no-materialize",
        action="store_true",
        help="skip inference; query only the asserted triples",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("load", help="load the corpus and print summary statistics")
    sub.add_parser("validate", help="run corpus validation and report findings")

    q = sub.add_parser("query", help="run a SPARQL query against the corpus")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("-f", "--file", help="query file (.rq); bare names resolve in <data>/queries")
    src.add_argument("-e", "--inline", help="query text given inline")
    q.add_argument(
        "--format",
        choices=("table", "json", "xml", "tsv"),
        default="table",
        help="result rendering (default: table)",
    )

    e = sub.add_parser("export", help="write the store as Turtle on stdout")
    e.add_argument(
        "--view",
        choices=("asserted", "materialized"),
        default="materialized",
        help="asserted triples only, or the full inferred closure",
    )

    s = sub.add_parser("serve", help="serve the SPARQL endpoint and explorer UI")
    s.add_argument("--port", type=int, default=7878, help="TCP port (default: 7878)")

    return parser


def _load(args, validate=True):
    return load_corpus(
        args.data, materialize_store=not args.no_materialize, validate=validate
    )


def cmd_load(args) -> int:
    try:
        corpus = _load(args)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LOAD
    store, schema = corpus.store, corpus.schema
    asserted = len(store.asserted())
    print(f"data dir:   {corpus.data_dir}")
    print(f"classes:    {len(schema.classes)}")
    print(f"properties: {len(schema.object_properties)}")
    print(f"triples:    {len(store)} ({asserted} asserted, {len(store) - asserted} inferred)")
    print(f"queries:    {', '.join(sorted(corpus.queries)) or '(none)'}")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        corpus = _load(args, validate=False)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LOAD
    report = validate_corpus(corpus.store, corpus.schema)
    if report.ok:
        print("corpus valid: no findings")
        return EXIT_OK
    for finding in report.findings:
        print(str(finding))
    return EXIT_FINDINGS


def _read_query(args, corpus) -> str | None:
    if args.inline is not None:
        return args.inline
    path = Path(args.file)
    if not path.is_file():
        # convenience: resolve relative names against the corpus directory
        fallback = corpus.data_dir / args.file
        if fallback.is_file():
            path = fallback
        elif (corpus.data_dir / "queries" / path.name).is_file():
            path = corpus.data_dir / "queries" / path.name
        else:
            return None
    return path.read_text(encoding="utf-8")


def cmd_query(args) -> int:
    try:
        corpus = _load(args)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LOAD
    text = _read_query(args, corpus)
    if text is None:
        print(f"error: query file not found: {args.file}", file=sys.stderr)
        return EXIT_LOAD
    try:
        ast = parse_query(text, corpus.prefixes)
    except ParseError as e:
        print(f"query error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    for warning in ast.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    solutions = evaluate(ast, corpus.store)
    if args.format == "table":
        print(render_table(solutions, corpus.prefixes), end="")
    else:
        print(serialize_results(solutions, args.format, corpus.prefixes), end="")
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        corpus = _load(args)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LOAD
    if args.view == "asserted":
        triples = corpus.store.asserted()
    else:
        triples = list(corpus.store.triples())
    print(serialize(triples, corpus.prefixes), end="")
    return EXIT_OK


def cmd_serve(args) -> int:
    if not 1 <= args.port <= 65535:
        print(f"error: port {args.port} out of range 1-65535", file=sys.stderr)
        return EXIT_BIND
    try:
        corpus = _load(args)
    except CorpusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LOAD
    from .endpoint import serve

    try:
        serve(corpus, port=args.port)
    except OSError as e:
        print(f"error: cannot bind port {args.port}: {e}", file=sys.stderr)
        return EXIT_BIND
    return EXIT_OK


def _display(term, prefixes: PrefixMap) -> str:
    if isinstance(term, Iri):
        return prefixes.compact(term)
    if isinstance(term, Literal):
        text = term.text
        if len(text) > LITERAL_DISPLAY_LIMIT:
            return text[:LITERAL_DISPLAY_LIMIT] + "…"
        return text
    return str(term)


def render_table(solutions: SolutionSequence, prefixes: PrefixMap, width: int | None = None) -> str:
    """Plain-text result table; IRIs compacted, long literals truncated."""
    if width is None:
        width = shutil.get_terminal_size(fallback=(100, 24)).columns
    header = list(solutions.vars)
    cells = [
        [_display(row[v], prefixes) if v in row else "" for v in header]
        for row in solutions.rows
    ]
    if not header:
        return f"({len(solutions.rows)} solution(s), no variables)\n"

    widths = [len(h) for h in header]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    # shrink to terminal if oversized, never below a readable floor
    total = sum(widths) + 3 * (len(widths) - 1)
    if total > width:
        excess = total - width
        for i in sorted(range(len(widths)), key=lambda i: -widths[i]):
            take = min(excess, widths[i] - 12)
            if take > 0:
                widths[i] -= take
                excess -= take
            if excess <= 0:
                break

    def fit(text: str, w: int) -> str:
        if len(text) > w:
            return text[: max(w - 1, 1)] + "…"
        return text.ljust(w)

    lines = [" | ".join(fit(h, w) for h, w in zip(header, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    for row in cells:
        lines.append(" | ".join(fit(c, w) for c, w in zip(row, widths)))
    lines.append(f"({len(cells)} solution(s))")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "load": cmd_load,
        "validate": cmd_validate,
        "query": cmd_query,
        "export": cmd_export,
        "serve": cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
