"""Parser and serializer for the persistence format, a restricted Turtle subset.

Supported: ``@prefix`` directives, angle-bracket IRIs, prefixed names,
``a`` for rdf:type, semicolon/comma abbreviation, string/integer/boolean/
decimal literals, ``^^`` datatype annotation, ``@lang`` tags and ``#``
comments. No blank nodes, no collections, no base resolution. The first
error aborts the parse; positions are 1-based.

Serialization is deterministic: prefixes, subjects, predicates and objects
are all emitted in sorted order, so equal graphs serialize byte-identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mathkg.errors import ParseError
from mathkg.model import (
    BOOLEAN,
    DATATYPE_IRI,
    DECIMAL,
    INTEGER,
    IRI_DATATYPE,
    STRING,
    Iri,
    Literal,
    Term,
    Triple,
    compact_iri,
    lexical_valid,
    term_key,
)
from mathkg.schema import RDF_TYPE
from mathkg.store import Graph

_PNAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*:[A-Za-z0-9_]?[A-Za-z0-9_.-]*|:")
_LANGTAG_RE = re.compile(r"@[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*")
_NUMBER_RE = re.compile(r"[+-]?(?:[0-9]*\.[0-9]+|[0-9]+)")
_BAREWORD_RE = re.compile(r"[A-Za-z]+")

_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "\\": "\\"}
_UNESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


@dataclass(frozen=True, slots=True)
class _Token:
    type: str
    value: str
    line: int
    column: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def _error(self, message: str, kind: str = "lex") -> ParseError:
        return ParseError(message, self.line, self.column, kind)

    def _advance(self, count: int) -> None:
        for ch in self.text[self.pos : self.pos + count]:
            if ch == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += count

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self.next_token()
            out.append(tok)
            if tok.type == "EOF":
                return out

    def next_token(self) -> _Token:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self._advance(1)
            elif ch == "#":
                end = text.find("\n", self.pos)
                self._advance((end if end != -1 else len(text)) - self.pos)
            else:
                break
        if self.pos >= len(text):
            return _Token("EOF", "", self.line, self.column)
        line, column = self.line, self.column
        ch = text[self.pos]
        if ch == "<":
            end = text.find(">", self.pos + 1)
            segment = text[self.pos + 1 : end] if end != -1 else ""
            if end == -1 or "\n" in segment or " " in segment:
                raise self._error("unterminated IRI reference")
            self._advance(end + 1 - self.pos)
            return _Token("IRIREF", segment, line, column)
        if ch == '"':
            return self._string(line, column)
        if ch == "@":
            rest = text[self.pos :]
            if rest.startswith("@prefix"):
                self._advance(len("@prefix"))
                return _Token("PREFIX_KW", "@prefix", line, column)
            m = _LANGTAG_RE.match(text, self.pos)
            if m:
                self._advance(m.end() - self.pos)
                return _Token("LANGTAG", m.group()[1:], line, column)
            raise self._error("malformed directive or language tag")
        if ch == "^":
            if text.startswith("^^", self.pos):
                self._advance(2)
                return _Token("DCARET", "^^", line, column)
            raise self._error("stray '^'")
        if ch in ".;,":
            # A dot may also start a decimal literal (".5").
            if ch == "." and self.pos + 1 < len(text) and text[self.pos + 1].isdigit():
                pass
            else:
                self._advance(1)
                return _Token({".": "DOT", ";": "SEMI", ",": "COMMA"}[ch], ch, line, column)
        if ch.isdigit() or ch in "+-." :
            m = _NUMBER_RE.match(text, self.pos)
            if not m:
                raise self._error(f"unexpected character {ch!r}")
            self._advance(m.end() - self.pos)
            kind = "DECIMAL" if "." in m.group() else "INTEGER"
            return _Token(kind, m.group(), line, column)
        m = _PNAME_RE.match(text, self.pos)
        if m and ":" in m.group():
            self._advance(m.end() - self.pos)
            return _Token("PNAME", m.group(), line, column)
        m = _BAREWORD_RE.match(text, self.pos)
        if m:
            word = m.group()
            if word == "a" or word in ("true", "false"):
                self._advance(m.end() - self.pos)
                return _Token("A" if word == "a" else "BOOLEAN", word, line, column)
            raise self._error(f"unexpected bare word {word!r}")
        raise self._error(f"unexpected character {ch!r}")

    def _string(self, line: int, column: int) -> _Token:
        text = self.text
        i = self.pos + 1
        chars: list[str] = []
        while i < len(text):
            ch = text[i]
            if ch == '"':
                self._advance(i + 1 - self.pos)
                return _Token("STRING", "".join(chars), line, column)
            if ch == "\n":
                break
            if ch == "\\":
                if i + 1 >= len(text):
                    break
                esc = text[i + 1]
                if esc in _ESCAPES:
                    chars.append(_ESCAPES[esc])
                    i += 2
                    continue
                if esc in ("u", "U"):
                    width = 4 if esc == "u" else 8
                    hexpart = text[i + 2 : i + 2 + width]
                    if len(hexpart) != width or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
                        raise self._error("malformed unicode escape")
                    code = int(hexpart, 16)
                    if code > 0x10FFFF:
                        raise self._error("unicode escape out of range")
                    chars.append(chr(code))
                    i += 2 + width
                    continue
                raise self._error(f"unknown string escape '\\{esc}'")
            chars.append(ch)
            i += 1
        raise self._error("unterminated string literal")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens()
        self.index = 0
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _next(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.type != "EOF":
            self.index += 1
        return tok

    def _expect(self, type_: str, what: str) -> _Token:
        tok = self._next()
        if tok.type != type_:
            raise ParseError(
                f"expected {what}, found {tok.value!r}" if tok.type != "EOF" else f"expected {what}, found end of input",
                tok.line,
                tok.column,
            )
        return tok

    def parse(self) -> tuple[list[Triple], dict[str, str]]:
        while self._peek().type != "EOF":
            if self._peek().type == "PREFIX_KW":
                self._directive()
            else:
                self._triples()
        return self.triples, self.prefixes

    def _directive(self) -> None:
        self._next()
        name = self._expect("PNAME", "prefix name")
        if not name.value.endswith(":"):
            raise ParseError("prefix declaration must end with ':'", name.line, name.column)
        iri = self._expect("IRIREF", "namespace IRI")
        self._expect("DOT", "'.'")
        self.prefixes[name.value[:-1]] = iri.value

    def _iri(self, tok: _Token) -> Iri:
        if tok.type == "IRIREF":
            value = tok.value
        else:
            prefix, _, local = tok.value.partition(":")
            if prefix not in self.prefixes:
                raise ParseError(f"unknown prefix {prefix!r}", tok.line, tok.column, "prefix")
            value = self.prefixes[prefix] + local
        try:
            return Iri(value)
        except ValueError as exc:
            raise ParseError(str(exc), tok.line, tok.column) from exc

    def _triples(self) -> None:
        subject = self._subject()
        self._predicate_object_list(subject)
        self._expect("DOT", "'.'")

    def _subject(self) -> Iri:
        tok = self._next()
        if tok.type not in ("IRIREF", "PNAME"):
            raise ParseError(f"expected subject IRI, found {tok.value!r}", tok.line, tok.column)
        return self._iri(tok)

    def _predicate_object_list(self, subject: Iri) -> None:
        while True:
            tok = self._next()
            if tok.type == "A":
                predicate = RDF_TYPE
            elif tok.type in ("IRIREF", "PNAME"):
                predicate = self._iri(tok)
            else:
                raise ParseError(f"expected predicate, found {tok.value!r}", tok.line, tok.column)
            self._object_list(subject, predicate)
            if self._peek().type == "SEMI":
                self._next()
                if self._peek().type in ("DOT",):  # tolerate trailing ';'
                    return
                continue
            return

    def _object_list(self, subject: Iri, predicate: Iri) -> None:
        while True:
            self.triples.append(Triple(subject, predicate, self._object()))
            if self._peek().type == "COMMA":
                self._next()
                continue
            return

    def _object(self) -> Term:
        tok = self._next()
        if tok.type in ("IRIREF", "PNAME"):
            return self._iri(tok)
        if tok.type == "INTEGER":
            return Literal(tok.value, INTEGER)
        if tok.type == "DECIMAL":
            return Literal(tok.value, DECIMAL)
        if tok.type == "BOOLEAN":
            return Literal(tok.value, BOOLEAN)
        if tok.type == "STRING":
            if self._peek().type == "LANGTAG":
                lang = self._next()
                return Literal(tok.value, STRING, lang.value)
            if self._peek().type == "DCARET":
                self._next()
                dtok = self._next()
                if dtok.type not in ("IRIREF", "PNAME"):
                    raise ParseError("expected datatype IRI after '^^'", dtok.line, dtok.column)
                datatype_iri = self._iri(dtok)
                datatype = IRI_DATATYPE.get(datatype_iri.value)
                if datatype is None:
                    raise ParseError(
                        f"unsupported datatype <{datatype_iri.value}>",
                        dtok.line,
                        dtok.column,
                        "datatype",
                    )
                if not lexical_valid(tok.value, datatype):
                    raise ParseError(
                        f"invalid {datatype} lexical form {tok.value!r}",
                        tok.line,
                        tok.column,
                        "datatype",
                    )
                return Literal(tok.value, datatype)
            return Literal(tok.value, STRING)
        raise ParseError(f"expected object term, found {tok.value!r}", tok.line, tok.column)


def parse_document(text: str) -> tuple[list[Triple], dict[str, str]]:
    """Parse a document into triples and its prefix map.

    Raises ParseError (never anything else) on malformed input.
    """
    try:
        return _Parser(text).parse()
    except ParseError:
        raise
    except ValueError as exc:  # safety net: only ParseError may escape
        raise ParseError(str(exc), 1, 1) from exc


def load_graph(text: str, graph: Graph | None = None) -> Graph:
    triples, prefixes = parse_document(text)
    graph = graph or Graph()
    graph.prefixes.update(prefixes)
    for t in triples:
        graph.insert(t)
    return graph


def _escape(value: str) -> str:
    out = []
    for ch in value:
        if ch in _UNESCAPES:
            out.append(_UNESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _render_term(term: Term, prefixes: dict[str, str]) -> str:
    if isinstance(term, Iri):
        return compact_iri(term, prefixes)
    if term.datatype in (INTEGER, DECIMAL, BOOLEAN):
        return term.lexical
    body = f'"{_escape(term.lexical)}"'
    if term.lang:
        return f"{body}@{term.lang}"
    if term.datatype == STRING:
        return body
    return f"{body}^^{compact_iri(Iri(DATATYPE_IRI[term.datatype]), prefixes)}"


def _used_prefixes(triples: list[Triple], prefixes: dict[str, str]) -> dict[str, str]:
    used: dict[str, str] = {}
    iris: set[str] = set()
    for t in triples:
        iris.add(t.subject.value)
        if t.predicate != RDF_TYPE:  # rendered as 'a', needs no prefix
            iris.add(t.predicate.value)
        if isinstance(t.object, Iri):
            iris.add(t.object.value)
        elif t.object.datatype not in (STRING, INTEGER, DECIMAL, BOOLEAN):
            iris.add(DATATYPE_IRI[t.object.datatype])
    for prefix, ns in prefixes.items():
        if any(iri.startswith(ns) for iri in iris):
            used[prefix] = ns
    return used


def serialize(graph: Graph) -> str:
    """Deterministic text for a graph; re-parsing reproduces the triple set."""
    triples = list(graph)
    prefixes = _used_prefixes(triples, graph.prefixes)
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in sorted(prefixes.items())]
    if lines:
        lines.append("")

    by_subject: dict[Iri, dict[Iri, list[Term]]] = {}
    for t in triples:
        by_subject.setdefault(t.subject, {}).setdefault(t.predicate, []).append(t.object)

    first = True
    for subject in sorted(by_subject, key=lambda s: s.value):
        if not first:
            lines.append("")
        first = False
        preds = by_subject[subject]
        # rdf:type leads as 'a'; the rest follow in IRI order.
        ordered = sorted(preds, key=lambda p: (p != RDF_TYPE, p.value))
        parts = []
        for predicate in ordered:
            rendered = ", ".join(
                _render_term(o, prefixes) for o in sorted(preds[predicate], key=term_key)
            )
            verb = "a" if predicate == RDF_TYPE else compact_iri(predicate, prefixes)
            parts.append(f"{verb} {rendered}")
        head = _render_term(subject, prefixes)
        if len(parts) == 1:
            lines.append(f"{head} {parts[0]} .")
        else:
            lines.append(f"{head} {parts[0]} ;")
            for part in parts[1:-1]:
                lines.append(f"    {part} ;")
            lines.append(f"    {parts[-1]} .")
    return "\n".join(lines) + "\n"
