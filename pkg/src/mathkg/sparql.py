"""SELECT queries over basic graph patterns with nestable (NOT) EXISTS filters.

The grammar covers PREFIX, SELECT, WHERE, triple patterns with ';'/','
abbreviation, FILTER with NOT EXISTS / EXISTS / CONTAINS / STR, string and
IRI constants, and '#' comments. Anything else that is valid SPARQL (
OPTIONAL, UNION, ORDER BY, property paths, aggregates, ...) raises
UnsupportedFeature so callers can distinguish "outside the subset" from a
plain syntax error.

Evaluation uses bag-of-mappings semantics with duplicate elimination at
projection time. (NOT) EXISTS bodies are evaluated per candidate solution
with outer bindings substituted, which makes them correlated subqueries.
Result rows are sorted by the projected columns, so evaluation is
deterministic for a fixed graph.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field

from mathkg.errors import ParseError, UnsupportedFeature
from mathkg.model import (
    BOOLEAN,
    DECIMAL,
    INTEGER,
    STRING,
    DEFAULT_PREFIXES,
    Iri,
    Literal,
    Term,
    compact_iri,
    term_key,
)
from mathkg.schema import RDF_TYPE
from mathkg.store import Graph, TriplePattern, Var

# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPattern:
    patterns: tuple[TriplePattern, ...]
    filters: tuple["FilterExpr", ...]

    def variables(self) -> set[str]:
        names: set[str] = set()
        for p in self.patterns:
            names |= p.variables()
        for f in self.filters:
            names |= f.variables()
        return names


@dataclass(frozen=True)
class NotExists:
    group: GroupPattern

    def variables(self) -> set[str]:
        return self.group.variables()


@dataclass(frozen=True)
class Exists:
    group: GroupPattern

    def variables(self) -> set[str]:
        return self.group.variables()


@dataclass(frozen=True)
class Contains:
    haystack: "FilterExpr"
    needle: "FilterExpr"

    def variables(self) -> set[str]:
        return self.haystack.variables() | self.needle.variables()


@dataclass(frozen=True)
class StrFn:
    arg: "FilterExpr"

    def variables(self) -> set[str]:
        return self.arg.variables()


@dataclass(frozen=True)
class VarExpr:
    var: Var

    def variables(self) -> set[str]:
        return {self.var.name}


@dataclass(frozen=True)
class ConstExpr:
    term: Term

    def variables(self) -> set[str]:
        return set()


FilterExpr = NotExists | Exists | Contains | StrFn | VarExpr | ConstExpr


@dataclass(frozen=True)
class SelectQuery:
    prefixes: dict[str, str] = field(hash=False)
    projection: tuple[Var, ...] = ()
    where: GroupPattern = GroupPattern((), ())


@dataclass(frozen=True)
class ResultTable:
    header: tuple[str, ...]
    rows: tuple[tuple[Term | None, ...], ...]
    prefixes: dict[str, str] = field(hash=False, default_factory=dict)
    warnings: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# Lexer / parser
# ---------------------------------------------------------------------------

_KEYWORDS = {"PREFIX", "SELECT", "WHERE", "FILTER", "NOT", "EXISTS", "CONTAINS", "STR"}
_UNSUPPORTED = {
    "OPTIONAL", "UNION", "ORDER", "BY", "GROUP", "HAVING", "LIMIT", "OFFSET",
    "BIND", "VALUES", "MINUS", "GRAPH", "SERVICE", "ASK", "CONSTRUCT",
    "DESCRIBE", "INSERT", "DELETE", "DISTINCT", "REDUCED", "FROM", "NAMED",
    "REGEX", "LANG", "DATATYPE", "BOUND", "ASC", "DESC", "AS", "COUNT", "SUM",
    "AVG", "MIN", "MAX", "SAMPLE",
}

_VAR_RE = re.compile(r"[?$]([A-Za-z_][A-Za-z0-9_]*)")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_PNAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*:[A-Za-z0-9_]?[A-Za-z0-9_.-]*|[A-Za-z][A-Za-z0-9_-]*:")
_NUMBER_RE = re.compile(r"[+-]?(?:[0-9]*\.[0-9]+|[0-9]+)")
_PUNCT = {"{": "LBRACE", "}": "RBRACE", "(": "LPAREN", ")": "RPAREN",
          ".": "DOT", ";": "SEMI", ",": "COMMA"}


@dataclass(frozen=True, slots=True)
class _Token:
    type: str
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, column, pos = 1, 1, 0

    def advance(count: int) -> None:
        nonlocal line, column, pos
        for ch in text[pos : pos + count]:
            if ch == "\n":
                line += 1
                column = 1
            else:
                column += 1
        pos += count

    while pos < len(text):
        ch = text[pos]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "#":
            end = text.find("\n", pos)
            advance((end if end != -1 else len(text)) - pos)
            continue
        start_line, start_col = line, column
        if ch == "<":
            end = text.find(">", pos + 1)
            segment = text[pos + 1 : end] if end != -1 else ""
            if end == -1 or "\n" in segment or " " in segment:
                raise ParseError("unterminated IRI reference", start_line, start_col, "lex")
            advance(end + 1 - pos)
            tokens.append(_Token("IRIREF", segment, start_line, start_col))
            continue
        if ch == '"':
            end = pos + 1
            chars: list[str] = []
            closed = False
            while end < len(text):
                c = text[end]
                if c == '"':
                    closed = True
                    break
                if c == "\n":
                    break
                if c == "\\" and end + 1 < len(text) and text[end + 1] in '\\"tnr':
                    chars.append({"t": "\t", "n": "\n", "r": "\r"}.get(text[end + 1], text[end + 1]))
                    end += 2
                    continue
                chars.append(c)
                end += 1
            if not closed:
                raise ParseError("unterminated string literal", start_line, start_col, "lex")
            advance(end + 1 - pos)
            tokens.append(_Token("STRING", "".join(chars), start_line, start_col))
            continue
        if ch in _PUNCT:
            if ch == "." and pos + 1 < len(text) and text[pos + 1].isdigit():
                pass  # decimal constant
            else:
                advance(1)
                tokens.append(_Token(_PUNCT[ch], ch, start_line, start_col))
                continue
        m = _VAR_RE.match(text, pos)
        if m:
            advance(m.end() - pos)
            tokens.append(_Token("VAR", m.group(1), start_line, start_col))
            continue
        if ch.isdigit() or ch in "+-.":
            m = _NUMBER_RE.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", start_line, start_col, "lex")
            advance(m.end() - pos)
            kind = "DECIMAL" if "." in m.group() else "INTEGER"
            tokens.append(_Token(kind, m.group(), start_line, start_col))
            continue
        m = _PNAME_RE.match(text, pos)
        if m and ":" in m.group():
            advance(m.end() - pos)
            tokens.append(_Token("PNAME", m.group(), start_line, start_col))
            continue
        m = _WORD_RE.match(text, pos)
        if m:
            word = m.group()
            upper = word.upper()
            advance(m.end() - pos)
            if word == "a":
                tokens.append(_Token("A", word, start_line, start_col))
            elif word in ("true", "false"):
                tokens.append(_Token("BOOLEAN", word, start_line, start_col))
            elif upper in _KEYWORDS:
                tokens.append(_Token(upper, word, start_line, start_col))
            elif upper in _UNSUPPORTED:
                raise UnsupportedFeature(
                    f"{upper} is not in the supported query subset",
                    start_line, start_col,
                )
            else:
                raise ParseError(f"unexpected word {word!r}", start_line, start_col, "lex")
            continue
        raise ParseError(f"unexpected character {ch!r}", start_line, start_col, "lex")
    tokens.append(_Token("EOF", "", line, column))
    return tokens


class _QueryParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0
        self.prefixes: dict[str, str] = {}

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
            found = repr(tok.value) if tok.type != "EOF" else "end of input"
            raise ParseError(f"expected {what}, found {found}", tok.line, tok.column)
        return tok

    def _iri(self, tok: _Token) -> Iri:
        if tok.type == "IRIREF":
            try:
                return Iri(tok.value)
            except ValueError as exc:
                raise ParseError(str(exc), tok.line, tok.column) from exc
        prefix, _, local = tok.value.partition(":")
        if prefix not in self.prefixes:
            raise ParseError(f"unknown prefix {prefix!r}", tok.line, tok.column, "prefix")
        return Iri(self.prefixes[prefix] + local)

    def parse(self) -> SelectQuery:
        while self._peek().type == "PREFIX":
            self._next()
            name = self._expect("PNAME", "prefix name")
            if not name.value.endswith(":"):
                raise ParseError("prefix declaration must end with ':'", name.line, name.column)
            iri = self._expect("IRIREF", "namespace IRI")
            self.prefixes[name.value[:-1]] = iri.value
        self._expect("SELECT", "SELECT")
        projection: list[Var] = []
        while self._peek().type == "VAR":
            projection.append(Var(self._next().value))
        if not projection:
            tok = self._peek()
            raise ParseError("SELECT needs at least one variable", tok.line, tok.column)
        self._expect("WHERE", "WHERE")
        where = self._group()
        tok = self._peek()
        if tok.type != "EOF":
            raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.column)
        missing = {v.name for v in projection} - where.variables()
        if missing:
            raise ParseError(
                f"projected variable ?{sorted(missing)[0]} does not occur in WHERE",
                tok.line, tok.column,
            )
        return SelectQuery(dict(self.prefixes), tuple(projection), where)

    def _group(self) -> GroupPattern:
        self._expect("LBRACE", "'{'")
        patterns: list[TriplePattern] = []
        filters: list[FilterExpr] = []
        while True:
            tok = self._peek()
            if tok.type == "RBRACE":
                self._next()
                return GroupPattern(tuple(patterns), tuple(filters))
            if tok.type == "EOF":
                raise ParseError("unterminated group, expected '}'", tok.line, tok.column)
            if tok.type == "FILTER":
                self._next()
                self._expect("LPAREN", "'(' after FILTER")
                filters.append(self._expression())
                self._expect("RPAREN", "')'")
                continue
            patterns.extend(self._triples_block())

    def _triples_block(self) -> list[TriplePattern]:
        subject = self._pattern_slot("subject")
        out: list[TriplePattern] = []
        while True:
            verb_tok = self._next()
            if verb_tok.type == "A":
                predicate: Term | Var = RDF_TYPE
            elif verb_tok.type == "VAR":
                predicate = Var(verb_tok.value)
            elif verb_tok.type in ("IRIREF", "PNAME"):
                predicate = self._iri(verb_tok)
            else:
                raise ParseError(
                    f"expected predicate, found {verb_tok.value!r} (incomplete triple?)",
                    verb_tok.line, verb_tok.column,
                )
            while True:
                out.append(TriplePattern(subject, predicate, self._object_slot()))
                if self._peek().type == "COMMA":
                    self._next()
                    continue
                break
            if self._peek().type == "SEMI":
                self._next()
                if self._peek().type in ("DOT", "RBRACE"):
                    break
                continue
            break
        if self._peek().type == "DOT":
            self._next()
        return out

    def _pattern_slot(self, what: str) -> Term | Var:
        tok = self._next()
        if tok.type == "VAR":
            return Var(tok.value)
        if tok.type in ("IRIREF", "PNAME"):
            return self._iri(tok)
        raise ParseError(f"expected {what}, found {tok.value!r}", tok.line, tok.column)

    def _object_slot(self) -> Term | Var:
        tok = self._peek()
        if tok.type == "VAR":
            return Var(self._next().value)
        if tok.type in ("IRIREF", "PNAME"):
            return self._iri(self._next())
        if tok.type == "STRING":
            return Literal(self._next().value, STRING)
        if tok.type == "INTEGER":
            return Literal(self._next().value, INTEGER)
        if tok.type == "DECIMAL":
            return Literal(self._next().value, DECIMAL)
        if tok.type == "BOOLEAN":
            return Literal(self._next().value, BOOLEAN)
        raise ParseError(
            f"expected object term, found {tok.value!r} (incomplete triple?)",
            tok.line, tok.column,
        )

    def _expression(self) -> FilterExpr:
        tok = self._peek()
        if tok.type == "NOT":
            self._next()
            self._expect("EXISTS", "EXISTS after NOT")
            return NotExists(self._group())
        if tok.type == "EXISTS":
            self._next()
            return Exists(self._group())
        if tok.type == "CONTAINS":
            self._next()
            self._expect("LPAREN", "'('")
            haystack = self._expression()
            self._expect("COMMA", "','")
            needle = self._expression()
            self._expect("RPAREN", "')'")
            return Contains(haystack, needle)
        if tok.type == "STR":
            self._next()
            self._expect("LPAREN", "'('")
            arg = self._expression()
            self._expect("RPAREN", "')'")
            return StrFn(arg)
        if tok.type == "LPAREN":
            self._next()
            inner = self._expression()
            self._expect("RPAREN", "')'")
            return inner
        if tok.type == "VAR":
            return VarExpr(Var(self._next().value))
        if tok.type in ("IRIREF", "PNAME"):
            return ConstExpr(self._iri(self._next()))
        if tok.type == "STRING":
            return ConstExpr(Literal(self._next().value, STRING))
        if tok.type == "INTEGER":
            return ConstExpr(Literal(self._next().value, INTEGER))
        if tok.type == "DECIMAL":
            return ConstExpr(Literal(self._next().value, DECIMAL))
        if tok.type == "BOOLEAN":
            return ConstExpr(Literal(self._next().value, BOOLEAN))
        raise ParseError(f"expected filter expression, found {tok.value!r}", tok.line, tok.column)


def parse_query(text: str) -> SelectQuery:
    return _QueryParser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _substitute(pattern: TriplePattern, binding: dict[str, Term]) -> TriplePattern:
    def slot(s):
        if isinstance(s, Var) and s.name in binding:
            return binding[s.name]
        return s

    return TriplePattern(slot(pattern.subject), slot(pattern.predicate), slot(pattern.object))


def _solve_group(graph: Graph, group: GroupPattern, seed: dict[str, Term]) -> list[dict[str, Term]]:
    solutions = [dict(seed)]
    for pattern in group.patterns:
        extended: list[dict[str, Term]] = []
        for sol in solutions:
            for binding in graph.match(_substitute(pattern, sol)):
                merged = dict(sol)
                merged.update(binding)
                extended.append(merged)
        solutions = extended
        if not solutions:
            break
    if group.filters and solutions:
        solutions = [
            sol
            for sol in solutions
            if all(_effective_bool(_eval_expr(graph, f, sol)) for f in group.filters)
        ]
    return solutions


def _eval_expr(graph: Graph, expr: FilterExpr, binding: dict[str, Term]):
    if isinstance(expr, NotExists):
        return not _solve_group(graph, expr.group, binding)
    if isinstance(expr, Exists):
        return bool(_solve_group(graph, expr.group, binding))
    if isinstance(expr, Contains):
        hay = _string_value(_eval_expr(graph, expr.haystack, binding))
        needle = _string_value(_eval_expr(graph, expr.needle, binding))
        if hay is None or needle is None:
            return None
        return needle in hay
    if isinstance(expr, StrFn):
        value = _eval_expr(graph, expr.arg, binding)
        if isinstance(value, Iri):
            return value.value
        if isinstance(value, Literal):
            return value.lexical
        if isinstance(value, str):
            return value
        return None
    if isinstance(expr, VarExpr):
        return binding.get(expr.var.name)
    if isinstance(expr, ConstExpr):
        return expr.term
    raise TypeError(f"unknown filter expression {expr!r}")


def _string_value(value) -> str | None:
    if isinstance(value, str):
        return value
    if isinstance(value, Literal):
        return value.lexical
    # Raw IRIs require STR(); bools/None are type errors here.
    return None


def _effective_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, Literal):
        if value.datatype == BOOLEAN:
            return value.lexical == "true"
        if value.datatype in (INTEGER, DECIMAL):
            return float(value.lexical) != 0
        return bool(value.lexical)
    if isinstance(value, str):
        return bool(value)
    return False  # None (error) and bare IRIs drop the row


def evaluate(graph: Graph, query: SelectQuery) -> ResultTable:
    solutions = _solve_group(graph, query.where, {})
    header = tuple(v.name for v in query.projection)
    distinct = {tuple(sol.get(name) for name in header) for sol in solutions}
    rows = tuple(sorted(distinct, key=lambda row: tuple(term_key(t) for t in row)))
    warnings = tuple(
        f"projected variable ?{name} is never bound"
        for i, name in enumerate(header)
        if rows and all(row[i] is None for row in rows)
    )
    prefixes = dict(DEFAULT_PREFIXES)
    prefixes.update(graph.prefixes)
    prefixes.update(query.prefixes)
    return ResultTable(header, rows, prefixes, warnings)


# ---------------------------------------------------------------------------
# Result formatting
# ---------------------------------------------------------------------------


def _render(term: Term | None, prefixes: dict[str, str]) -> str:
    if term is None:
        return ""
    if isinstance(term, Iri):
        rendered = compact_iri(term, prefixes)
        return rendered if not rendered.startswith("<") else term.value
    return term.lexical


def format_results(table: ResultTable, format: str = "aligned-text") -> str:
    """Render a result table as aligned text, RFC 4180 CSV, or JSON rows."""
    cells = [[_render(t, table.prefixes) for t in row] for row in table.rows]
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(table.header)
        writer.writerows(cells)
        return buf.getvalue()
    if format == "json-rows":
        return json.dumps({"header": list(table.header), "rows": cells}, ensure_ascii=False)
    if format == "aligned-text":
        widths = [
            max(len(name), *(len(row[i]) for row in cells)) if cells else len(name)
            for i, name in enumerate(table.header)
        ]
        lines = [
            "  ".join(name.ljust(widths[i]) for i, name in enumerate(table.header)).rstrip(),
            "  ".join("-" * w for w in widths),
        ]
        for row in cells:
            lines.append("  ".join(v.ljust(widths[i]) for i, v in enumerate(row)).rstrip())
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown result format {format!r}")
