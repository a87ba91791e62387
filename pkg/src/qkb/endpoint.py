"""HTTP SPARQL endpoint over a frozen corpus snapshot.

Routes:
    GET|POST /sparql        query execution (results JSON, XML, or TSV
                            negotiated through the Accept header)
    GET      /schema        class tree as recursive JSON nodes
    GET      /concepts      instances of ?class=<compacted-iri>
    GET      /queries[/n]   canned query texts
    GET      /...           explorer UI static assets

The snapshot is immutable for the process lifetime, so any number of
requests may be served concurrently; the server is read-only and SPARQL
UPDATE shapes are rejected by the query parser (400).
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .corpus import Corpus, local_name
from .model import Iri, ModelError, RDF_TYPE, TriplePattern, Variable
from .results import (
    MEDIA_TYPE_JSON,
    MEDIA_TYPE_TSV,
    MEDIA_TYPE_XML,
    serialize_results,
)
from .sparql import evaluate, parse_query
from .turtle import ParseError

MAX_QUERY_BYTES = 64 * 1024

WEBUI_DIR = Path(__file__).parent / "webui"

_ASSET_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}

# Top-level classes in the order the ontology presents them.
_TOP_LEVEL_ORDER = ("Allah", "City", "HolyBook", "QuranicNature", "QuranVerse")

_FALLBACK_INDEX = """<!doctype html>
<html><head><meta charset="utf-8"><title>qkb endpoint</title></head>
<body>
<h1>qkb SPARQL endpoint</h1>
<p>The explorer UI is not installed. The API is live:</p>
<ul>
<li><code>GET/POST /sparql</code></li>
<li><code>GET /schema</code>, <code>GET /concepts?class=…</code>, <code>GET /queries</code></li>
</ul>
</body></html>
"""


def schema_tree(corpus: Corpus) -> list[dict]:
    """The declared class hierarchy as nested {iri, label, children} nodes.

    Built from the asserted subclass axioms only, so inferred transitive
    edges never flatten the tree. Children sort by label; roots follow the
    ontology's canonical top-level order.
    """
    schema, prefixes = corpus.schema, corpus.prefixes

    def node(cls: Iri, seen: frozenset[Iri]) -> dict:
        children = sorted(schema.children(cls), key=lambda c: prefixes.compact(c))
        return {
            "iri": cls.value,
            "label": prefixes.compact(cls),
            "children": [node(c, seen | {cls}) for c in children if c not in seen],
        }

    def root_key(cls: Iri):
        name = local_name(cls)
        try:
            return (_TOP_LEVEL_ORDER.index(name), "")
        except ValueError:
            return (len(_TOP_LEVEL_ORDER), prefixes.compact(cls))

    roots = sorted(schema.roots(), key=root_key)
    return [node(r, frozenset()) for r in roots]


def concept_instances(corpus: Corpus, cls: Iri) -> list[str]:
    """Compacted IRIs of everything typed cls in the materialized store."""
    found = {
        b["x"]
        for b in corpus.store.match(TriplePattern(Variable("x"), RDF_TYPE, cls))
        if isinstance(b["x"], Iri)
    }
    return sorted(corpus.prefixes.compact(i) for i in found)


def _negotiate(accept: str) -> str | None:
    """Pick a result format from the Accept header; None means 406."""
    if not accept.strip():
        return "json"
    for part in accept.split(","):
        media = part.split(";")[0].strip().lower()
        if media in (MEDIA_TYPE_JSON, "application/json"):
            return "json"
        if media == MEDIA_TYPE_XML:
            return "xml"
        if media == MEDIA_TYPE_TSV:
            return "tsv"
        if media in ("*/*", "application/*", "text/*"):
            return "json"
    return None

_CONTENT_TYPES = {"json": MEDIA_TYPE_JSON, "xml": MEDIA_TYPE_XML, "tsv": MEDIA_TYPE_TSV}


class EndpointServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, corpus: Corpus, address: tuple[str, int], quiet: bool = False):
        self.corpus = corpus
        self.quiet = quiet
        super().__init__(address, _Handler)


class _Handler(BaseHTTPRequestHandler):
    server: EndpointServer
    protocol_version = "HTTP/1.1"

    # -- plumbing ------------------------------------------------------

    def log_message(self, format: str, *args) -> None:
        if not self.server.quiet:
            super().log_message(format, *args)

    def _send(self, status: int, content_type: str, body: str | bytes) -> None:
        data = body.encode("utf-8") if isinstance(body, str) else body
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _send_json(self, status: int, payload) -> None:
        self._send(status, "application/json; charset=utf-8", json.dumps(payload, indent=2))

    def _error(self, status: int, message: str, line: int | None = None, column: int | None = None) -> None:
        payload: dict = {"error": message}
        if line is not None:
            payload["line"] = line
            payload["column"] = column
        self._send_json(status, payload)

    # -- HTTP methods ----------------------------------------------------

    def do_GET(self) -> None:
        url = urlparse(self.path)
        route = url.path.rstrip("/") or "/"
        if url.path == "/sparql":
            params = parse_qs(url.query)
            query = params.get("query", [None])[0]
            if query is None:
                self._error(400, "missing query parameter")
                return
            self._run_sparql(query)
        elif route == "/schema":
            self._send_json(200, schema_tree(self.server.corpus))
        elif route == "/concepts":
            self._concepts(url.query)
        elif route == "/queries" or url.path.startswith("/queries/"):
            self._queries(url.path)
        else:
            self._static(url.path)

    def do_POST(self) -> None:
        if urlparse(self.path).path != "/sparql":
            self._error(405, "POST is only accepted on /sparql")
            return
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_QUERY_BYTES:
            self._error(413, f"query exceeds {MAX_QUERY_BYTES} bytes")
            return
        body = self.rfile.read(length).decode("utf-8", errors="replace")
        ctype = (self.headers.get("Content-Type") or "").split(";")[0].strip().lower()
        if ctype == "application/sparql-query":
            query = body
        elif ctype == "application/x-www-form-urlencoded":
            query = parse_qs(body).get("query", [None])[0]
            if query is None:
                self._error(400, "missing query form field")
                return
        else:
            self._error(400, f"unsupported content type {ctype or '(none)'!r}")
            return
        self._run_sparql(query)

    def do_OPTIONS(self) -> None:
        # CORS preflight for the separately-served development UI
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type, Accept")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _reject(self) -> None:
        self._error(405, f"method {self.command} not allowed")

    do_PUT = do_DELETE = do_PATCH = do_HEAD = _reject

    # -- routes ----------------------------------------------------------

    def _run_sparql(self, query: str) -> None:
        if len(query.encode("utf-8")) > MAX_QUERY_BYTES:
            self._error(413, f"query exceeds {MAX_QUERY_BYTES} bytes")
            return
        fmt = _negotiate(self.headers.get("Accept", ""))
        if fmt is None:
            self._error(406, "supported result types: sparql-results+json, sparql-results+xml, tab-separated-values")
            return
        try:
            ast = parse_query(query, self.server.corpus.prefixes)
        except ParseError as e:
            self._error(400, e.message, e.line, e.column)
            return
        solutions = evaluate(ast, self.server.corpus.store)
        body = serialize_results(solutions, fmt, self.server.corpus.prefixes)
        self._send(200, _CONTENT_TYPES[fmt], body)

    def _concepts(self, query_string: str) -> None:
        params = parse_qs(query_string)
        name = params.get("class", [None])[0]
        if name is None:
            self._error(400, "missing class parameter")
            return
        corpus = self.server.corpus
        try:
            cls = corpus.prefixes.expand(name) if not name.startswith("<") else Iri(name.strip("<>"))
        except ModelError:
            self._error(400, f"cannot resolve class {name!r}")
            return
        if cls not in corpus.schema.classes:
            self._error(400, f"unknown class {name!r}")
            return
        self._send_json(200, {"class": corpus.prefixes.compact(cls), "instances": concept_instances(corpus, cls)})

    def _queries(self, path: str) -> None:
        queries = self.server.corpus.queries
        if path.rstrip("/") == "/queries":
            self._send_json(200, queries)
            return
        name = path[len("/queries/"):]
        if name not in queries:
            self._error(404, f"unknown canned query {name!r}")
            return
        self._send_json(200, {"name": name, "query": queries[name]})

    def _static(self, path: str) -> None:
        name = path.lstrip("/") or "index.html"
        file = (WEBUI_DIR / name).resolve()
        if WEBUI_DIR.is_dir() and file.is_file() and WEBUI_DIR.resolve() in file.parents:
            ctype = _ASSET_TYPES.get(file.suffix, "application/octet-stream")
            self._send(200, ctype, file.read_bytes())
        elif path in ("/", "/index.html"):
            self._send(200, "text/html; charset=utf-8", _FALLBACK_INDEX)
        else:
            self._error(404, f"no such resource: {path}")


def make_server(corpus: Corpus, port: int = 7878, host: str = "127.0.0.1", quiet: bool = False) -> EndpointServer:
    return EndpointServer(corpus, (host, port), quiet=quiet)


def serve(corpus: Corpus, port: int = 7878, host: str = "0.0.0.0") -> None:
    """Run until interrupted; prints the bound address on startup."""
    server = make_server(corpus, port, host)
    bound_host, bound_port = server.server_address[:2]
    print(f"qkb endpoint listening on http://{bound_host}:{bound_port}/", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
