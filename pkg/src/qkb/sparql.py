"""SPARQL-subset parser and evaluator.

Supported grammar: PREFIX declarations, SELECT (star or variable list),
and a WHERE clause holding triple patterns, nested {} groups, and
OPTIONAL blocks. Adjacent braced blocks parse as sibling groups.

    query     := prefixDecl* "SELECT" ("*" | var+) "WHERE" group
    prefixDecl:= "PREFIX" PNAME_NS IRIREF
    group     := "{" element* "}"
    element   := "OPTIONAL" group | group | triplePattern "."?
    pattern term := var | iri | "a" | literal

Evaluation follows SPARQL algebra on bags: basic graph patterns join
left-to-right through compatible-mapping merge, groups evaluate then
join, OPTIONAL left-joins (left rows survive unextended when the right
side has no compatible solution), and projection is applied last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    Iri,
    Literal,
    ModelError,
    PatternTerm,
    PrefixMap,
    RDF_TYPE,
    TriplePattern,
    UnknownPrefix,
    Variable,
)
from .store import BindingSet, Store
from .turtle import ParseError

_VAR_TOKEN_RE = re.compile(r"\?([A-Za-z][A-Za-z0-9_]*)")
_PNAME_RE = re.compile(r"([A-Za-z][A-Za-z0-9_-]*)?:([A-Za-z0-9_:-]*)")
_KEYWORD_RE = re.compile(r"[A-Za-z]+")
_LANGTAG_RE = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_HEX4_RE = re.compile(r"[0-9A-Fa-f]{4}")


@dataclass(frozen=True)
class OptionalPattern:
    pattern: "GroupPattern"


@dataclass(frozen=True)
class GroupPattern:
    elements: tuple = ()


@dataclass(frozen=True)
class QueryAst:
    prefixes: PrefixMap
    projection: tuple[str, ...] | None  # None means SELECT *
    pattern: GroupPattern
    warnings: tuple[str, ...] = ()


@dataclass
class SolutionSequence:
    """Ordered bag of solution rows; a row may leave variables unbound."""

    vars: tuple[str, ...]
    rows: list[BindingSet]


@dataclass(frozen=True)
class _Token:
    kind: str
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
        snippet = self.src[self.pos:self.pos + 20]
        return ParseError(self.line, self.col, message, snippet)

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

        simple = {"{": "LBRACE", "}": "RBRACE", ".": "DOT", "*": "STAR"}
        if c in simple:
            self._advance(1)
            return _Token(simple[c], c, line, col)
        if c == "?":
            m = _VAR_TOKEN_RE.match(self.src, self.pos)
            if not m:
                raise self.error("malformed variable name")
            self._advance(m.end() - m.start())
            return _Token("VAR", m.group(1), line, col)
        if c == "<":
            return self._iriref(line, col)
        if c == '"':
            return self._string(line, col)
        if self.src.startswith("^^", self.pos):
            self._advance(2)
            return _Token("DTYPE_SEP", "^^", line, col)
        if c == "@":
            m = _LANGTAG_RE.match(self.src, self.pos)
            if not m:
                raise self.error("malformed language tag")
            self._advance(m.end() - m.start())
            return _Token("LANGTAG", m.group(1), line, col)

        m = _PNAME_RE.match(self.src, self.pos)
        if m:
            self._advance(m.end() - m.start())
            return _Token("PNAME", (m.group(1) or "", m.group(2)), line, col)
        m = _KEYWORD_RE.match(self.src, self.pos)
        if m:
            word = m.group(0)
            self._advance(len(word))
            upper = word.upper()
            if upper in ("PREFIX", "SELECT", "WHERE", "OPTIONAL"):
                return _Token(upper, word, line, col)
            if word == "a":
                return _Token("A", word, line, col)
            raise ParseError(line, col, f"unexpected word {word!r}", word)
        raise self.error(f"unexpected character {c!r}")

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


class _Parser:
    def __init__(self, source: str, base_prefixes: PrefixMap | None = None):
        self.lexer = _Lexer(source)
        self.tok = self.lexer.next_token()
        self.prefixes = base_prefixes.copy() if base_prefixes else PrefixMap()

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

    def parse(self) -> QueryAst:
        while self.tok.kind == "PREFIX":
            self._bump()
            tok = self.tok
            if tok.kind != "PNAME" or tok.value[1] != "":
                raise self._error("expected prefix label ending in ':'")
            self._bump()
            ns = self._expect("IRIREF", "namespace IRI")
            self.prefixes.bind(tok.value[0], ns.value)

        self._expect("SELECT", "SELECT")
        projection = self._projection()
        where_tok = self._expect("WHERE", "WHERE")
        pattern = self._group()
        if self.tok.kind != "EOF":
            raise self._error("trailing content after query")
        if not pattern.elements:
            raise ParseError(where_tok.line, where_tok.column, "empty WHERE clause")

        warnings = []
        if projection is not None:
            in_pattern = set(_syntactic_vars(pattern))
            for v in projection:
                if v not in in_pattern:
                    warnings.append(f"projected variable ?{v} never appears in the pattern")
        return QueryAst(self.prefixes, projection, pattern, tuple(warnings))

    def _projection(self) -> tuple[str, ...] | None:
        if self.tok.kind == "STAR":
            self._bump()
            return None
        names: list[str] = []
        while self.tok.kind == "VAR":
            names.append(self._bump().value)
        if not names:
            raise self._error("expected '*' or at least one ?variable after SELECT")
        return tuple(names)

    def _group(self) -> GroupPattern:
        self._expect("LBRACE", "'{'")
        elements: list = []
        while self.tok.kind != "RBRACE":
            if self.tok.kind == "EOF":
                raise self._error("unterminated group: expected '}'")
            if self.tok.kind == "OPTIONAL":
                self._bump()
                elements.append(OptionalPattern(self._group()))
            elif self.tok.kind == "LBRACE":
                elements.append(self._group())
            else:
                elements.append(self._triple_pattern())
                if self.tok.kind == "DOT":
                    self._bump()
                elif self.tok.kind not in ("RBRACE", "LBRACE", "OPTIONAL"):
                    raise self._error("expected '.' between triple patterns")
        self._bump()
        return GroupPattern(tuple(elements))

    def _triple_pattern(self) -> TriplePattern:
        s = self._pattern_term("subject", allow_literal=False)
        p = self._pattern_term("predicate", allow_literal=False, allow_a=True)
        o = self._pattern_term("object", allow_literal=True)
        return TriplePattern(s, p, o)

    def _pattern_term(self, role: str, allow_literal: bool, allow_a: bool = False) -> PatternTerm:
        tok = self.tok
        if tok.kind == "VAR":
            self._bump()
            return Variable(tok.value)
        if tok.kind == "IRIREF":
            self._bump()
            return tok.value
        if tok.kind == "PNAME":
            self._bump()
            label, local = tok.value
            try:
                return self.prefixes.expand(f"{label}:{local}")
            except UnknownPrefix:
                raise ParseError(
                    tok.line, tok.column, f"undeclared prefix {label!r}", f"{label}:{local}"
                ) from None
        if tok.kind == "A" and allow_a:
            self._bump()
            return RDF_TYPE
        if tok.kind == "STRING" and allow_literal:
            self._bump()
            if self.tok.kind == "LANGTAG":
                return Literal(tok.value, lang=self._bump().value)
            if self.tok.kind == "DTYPE_SEP":
                self._bump()
                dt = self._pattern_term("datatype", allow_literal=False)
                if not isinstance(dt, Iri):
                    raise self._error("datatype must be an IRI")
                return Literal(tok.value, datatype=dt)
            return Literal(tok.value)
        raise self._error(f"expected term in {role} position")


def parse_query(text: str, base_prefixes: PrefixMap | None = None) -> QueryAst:
    """Parse a SELECT query; raises ParseError with line/column on failure.

    base_prefixes pre-registers namespaces (the CLI and endpoint seed the
    corpus prefixes here so short interactive queries work); PREFIX
    declarations in the query itself take precedence.
    """
    return _Parser(text, base_prefixes).parse()


def _syntactic_vars(group: GroupPattern) -> list[str]:
    """Variable names in first-appearance order across the whole pattern."""
    seen: dict[str, None] = {}

    def walk(g: GroupPattern) -> None:
        for el in g.elements:
            if isinstance(el, TriplePattern):
                for name in el.variables():
                    seen.setdefault(name)
            elif isinstance(el, OptionalPattern):
                walk(el.pattern)
            else:
                walk(el)

    walk(group)
    return list(seen)


def _compatible(a: BindingSet, b: BindingSet) -> bool:
    return all(a[k] == v for k, v in b.items() if k in a)


def _join(left: list[BindingSet], right: list[BindingSet]) -> list[BindingSet]:
    return [{**a, **b} for a in left for b in right if _compatible(a, b)]


def _left_join(left: list[BindingSet], right: list[BindingSet]) -> list[BindingSet]:
    out: list[BindingSet] = []
    for a in left:
        extended = [{**a, **b} for b in right if _compatible(a, b)]
        out.extend(extended if extended else [a])
    return out


def _substitute(pattern: TriplePattern, row: BindingSet) -> TriplePattern:
    def sub(t: PatternTerm) -> PatternTerm:
        if isinstance(t, Variable) and t.name in row:
            return row[t.name]
        return t

    return TriplePattern(sub(pattern.subject), sub(pattern.predicate), sub(pattern.object))


def _eval_group(group: GroupPattern, store: Store) -> list[BindingSet]:
    rows: list[BindingSet] = [{}]
    for el in group.elements:
        if isinstance(el, TriplePattern):
            rows = [
                {**row, **found}
                for row in rows
                for found in store.match(_substitute(el, row))
            ]
        elif isinstance(el, OptionalPattern):
            rows = _left_join(rows, _eval_group(el.pattern, store))
        else:
            rows = _join(rows, _eval_group(el, store))
    return rows


def evaluate(ast: QueryAst, store: Store) -> SolutionSequence:
    """Evaluate against a frozen store snapshot; bag semantics, rows in
    deterministic store order. Unknown IRIs simply match nothing."""
    if not store.frozen:
        raise ValueError("evaluate requires a frozen store snapshot")
    rows = _eval_group(ast.pattern, store)
    if ast.projection is None:
        variables = tuple(_syntactic_vars(ast.pattern))
        return SolutionSequence(variables, rows)
    projected = [
        {name: row[name] for name in ast.projection if name in row} for row in rows
    ]
    return SolutionSequence(ast.projection, projected)
