"""Turtle-subset reader and writer for the corpus data files.

Grammar (prefix directives, statements with ';' and ',' lists, IRIs,
prefixed names, string literals with @lang or ^^datatype, the keyword
'a', and '#' comments):

    doc                 := (prefixDecl | statement)*
    prefixDecl          := "@prefix" PNAME_NS IRIREF "."
    statement           := subject predicateObjectList "."
    predicateObjectList := verb objectList (";" verb objectList)*
    objectList          := object ("," object)*
    verb                := "a" | iri
    subject             := iri
    object              := iri | literal
    literal             := STRING ("@" LANGTAG | "^^" iri)?
    iri                 := IRIREF | PNAME_LN

Blank nodes, collections, numeric/boolean shorthand, @base and multi-line
strings are rejected with a ParseError. String escapes are limited to
\\" \\\\ \\n \\t \\uXXXX.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import (
    Iri,
    Literal,
    ModelError,
    PrefixMap,
    RDF_TYPE,
    Term,
    Triple,
    UnknownPrefix,
)

_PNAME_RE = re.compile(r"([A-Za-z][A-Za-z0-9_-]*)?:([A-Za-z0-9_:-]*)")
_LANGTAG_RE = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_HEX4_RE = re.compile(r"[0-9A-Fa-f]{4}")


class ParseError(Exception):
    """Lexical or grammatical violation, located by 1-based line/column."""

    def __init__(self, line: int, column: int, message: str, snippet: str = ""):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.snippet = snippet


@dataclass
class ParsedDocument:
    prefixes: PrefixMap
    triples: list[Triple]
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class _Token:
    kind: str  # PREFIX_KW IRIREF PNAME STRING LANGTAG DTYPE_SEP A DOT SEMI COMMA EOF
    value: object
    line: int
    column: int


class _Lexer:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        end = min(len(self.src), self.pos + 20)
        return ParseError(self.line, self.col, message, self.src[self.pos:end])

    def _advance(self, n: int) -> None:
        chunk = self.src[self.pos:self.pos + n]
        nl = chunk.count("\n")
        if nl:
            self.line += nl
            self.col = len(chunk) - chunk.rfind("\n")
        else:
            self.col += n
        self.pos += n

    def _skip_trivia(self) -> None:
        while self.pos < len(self.src):
            c = self.src[self.pos]
            if c in " \t\r\n":
                self._advance(1)
            elif c == "#":
                end = self.src.find("\n", self.pos)
                self._advance((end if end != -1 else len(self.src)) - self.pos)
            else:
                return

    def next_token(self) -> _Token:
        self._skip_trivia()
        line, col = self.line, self.col
        if self.pos >= len(self.src):
            return _Token("EOF", None, line, col)
        c = self.src[self.pos]

        if c == ".":
            self._advance(1)
            return _Token("DOT", ".", line, col)
        if c == ";":
            self._advance(1)
            return _Token("SEMI", ";", line, col)
        if c == ",":
            self._advance(1)
            return _Token("COMMA", ",", line, col)
        if c in "[]()" or self.src.startswith("_:", self.pos):
            raise self.error("blank nodes and collections are not supported")
        if c == "<":
            return self._iriref(line, col)
        if c == '"':
            return self._string(line, col)
        if c == "'":
            raise self.error("single-quoted strings are not supported")
        if c == "@":
            return self._at_word(line, col)
        if self.src.startswith("^^", self.pos):
            self._advance(2)
            return _Token("DTYPE_SEP", "^^", line, col)

        m = _PNAME_RE.match(self.src, self.pos)
        if m:
            self._advance(m.end() - m.start())
            return _Token("PNAME", (m.group(1) or "", m.group(2)), line, col)
        if c == "a" and not _is_name_char(self._peek(1)):
            self._advance(1)
            return _Token("A", "a", line, col)
        raise self.error(f"unexpected character {c!r}")

    def _peek(self, offset: int) -> str:
        i = self.pos + offset
        return self.src[i] if i < len(self.src) else ""

    def _iriref(self, line: int, col: int) -> _Token:
        end = self.pos + 1
        while end < len(self.src) and self.src[end] not in ">\n":
            end += 1
        if end >= len(self.src) or self.src[end] != ">":
            raise self.error("unterminated IRI reference")
        value = self.src[self.pos + 1:end]
        self._advance(end + 1 - self.pos)
        try:
            iri = Iri(value)
        except ModelError as e:
            raise ParseError(line, col, str(e), f"<{value}>") from None
        return _Token("IRIREF", iri, line, col)

    def _string(self, line: int, col: int) -> _Token:
        if self.src.startswith('"""', self.pos):
            raise self.error("multi-line strings are not supported")
        i = self.pos + 1
        out: list[str] = []
        while True:
            if i >= len(self.src) or self.src[i] == "\n":
                raise self.error("unterminated string literal")
            c = self.src[i]
            if c == '"':
                break
            if c == "\\":
                esc = self.src[i + 1:i + 2]
                if esc == '"':
                    out.append('"')
                    i += 2
                elif esc == "\\":
                    out.append("\\")
                    i += 2
                elif esc == "n":
                    out.append("\n")
                    i += 2
                elif esc == "t":
                    out.append("\t")
                    i += 2
                elif esc == "u":
                    hex4 = self.src[i + 2:i + 6]
                    if not _HEX4_RE.fullmatch(hex4):
                        raise self.error(f"invalid \\u escape: {self.src[i:i + 6]!r}")
                    out.append(chr(int(hex4, 16)))
                    i += 6
                else:
                    raise self.error(f"unsupported escape \\{esc}")
            else:
                out.append(c)
                i += 1
        self._advance(i + 1 - self.pos)
        return _Token("STRING", "".join(out), line, col)

    def _at_word(self, line: int, col: int) -> _Token:
        if self.src.startswith("@prefix", self.pos) and not _is_name_char(self._peek(7)):
            self._advance(len("@prefix"))
            return _Token("PREFIX_KW", "@prefix", line, col)
        if self.src.startswith("@base", self.pos) and not _is_name_char(self._peek(5)):
            raise self.error("@base is not supported")
        m = _LANGTAG_RE.match(self.src, self.pos)
        if m:
            self._advance(m.end() - m.start())
            return _Token("LANGTAG", m.group(1), line, col)
        raise self.error("malformed @ directive or language tag")


def _is_name_char(c: str) -> bool:
    return bool(c) and (c.isalnum() or c in "_:-")


class _Parser:
    def __init__(self, source: str):
        self.lexer = _Lexer(source)
        self.tok = self.lexer.next_token()
        self.prefixes = PrefixMap()
        self.triples: list[Triple] = []
        self.warnings: list[str] = []

    def _bump(self) -> _Token:
        tok = self.tok
        self.tok = self.lexer.next_token()
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        if self.tok.kind != kind:
            raise self._error(f"expected {what}")
        return self._bump()

    def _error(self, message: str) -> ParseError:
        t = self.tok
        return ParseError(t.line, t.column, message, str(t.value or ""))

    def parse(self) -> ParsedDocument:
        while self.tok.kind != "EOF":
            if self.tok.kind == "PREFIX_KW":
                self._prefix_decl()
            else:
                self._statement()
        return ParsedDocument(self.prefixes, self.triples, self.warnings)

    def _prefix_decl(self) -> None:
        self._bump()
        tok = self.tok
        if tok.kind != "PNAME" or tok.value[1] != "":
            raise self._error("expected prefix label ending in ':'")
        label = tok.value[0]
        self._bump()
        ns = self._expect("IRIREF", "namespace IRI")
        self._expect("DOT", "'.' after @prefix directive")
        if label in self.prefixes:
            self.warnings.append(f"prefix {label!r} redeclared; last declaration wins")
        self.prefixes.bind(label, ns.value)

    def _statement(self) -> None:
        subject = self._iri("subject")
        while True:
            predicate = self._verb()
            while True:
                obj = self._object()
                self.triples.append(Triple(subject, predicate, obj))
                if self.tok.kind == "COMMA":
                    self._bump()
                    continue
                break
            if self.tok.kind == "SEMI":
                self._bump()
                continue
            break
        self._expect("DOT", "'.' at end of statement")

    def _verb(self) -> Iri:
        if self.tok.kind == "A":
            self._bump()
            return RDF_TYPE
        return self._iri("predicate")

    def _iri(self, role: str) -> Iri:
        tok = self.tok
        if tok.kind == "IRIREF":
            self._bump()
            return tok.value
        if tok.kind == "PNAME":
            self._bump()
            return self._resolve(tok)
        raise self._error(f"expected IRI or prefixed name as {role}")

    def _resolve(self, tok: _Token) -> Iri:
        label, local = tok.value
        try:
            return self.prefixes.expand(f"{label}:{local}")
        except UnknownPrefix:
            raise ParseError(
                tok.line, tok.column, f"undeclared prefix {label!r}", f"{label}:{local}"
            ) from None

    def _object(self) -> Term:
        tok = self.tok
        if tok.kind in ("IRIREF", "PNAME"):
            return self._iri("object")
        if tok.kind == "STRING":
            self._bump()
            text = tok.value
            if self.tok.kind == "LANGTAG":
                lang = self._bump().value
                return Literal(text, lang=lang)
            if self.tok.kind == "DTYPE_SEP":
                self._bump()
                return Literal(text, datatype=self._iri("datatype"))
            return Literal(text)
        raise self._error("expected IRI, prefixed name, or string literal as object")


def parse_document(source: str) -> ParsedDocument:
    """Parse Turtle-subset text; raises ParseError at the first violation."""
    return _Parser(source).parse()


def _escape(text: str) -> str:
    out = []
    for c in text:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\t":
            out.append("\\t")
        elif ord(c) < 0x20:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def _render_term(term: Term, prefixes: PrefixMap) -> str:
    if isinstance(term, Iri):
        return prefixes.compact(term)
    rendered = f'"{_escape(term.text)}"'
    if term.lang:
        return f"{rendered}@{term.lang}"
    if term.datatype:
        return f"{rendered}^^{prefixes.compact(term.datatype)}"
    return rendered


def serialize(triples: list[Triple] | tuple[Triple, ...], prefixes: PrefixMap) -> str:
    """Render triples as Turtle, one statement per line, deterministically
    ordered by the compacted (subject, predicate, object) strings."""
    lines = [f"@prefix {label}: <{ns.value}> ." for label, ns in sorted(prefixes)]
    if lines:
        lines.append("")
    rendered = sorted(
        (
            prefixes.compact(t.subject),
            prefixes.compact(t.predicate),
            _render_term(t.object, prefixes),
        )
        for t in triples
    )
    lines.extend(f"{s} {p} {o} ." for s, p, o in rendered)
    return "\n".join(lines) + "\n"
