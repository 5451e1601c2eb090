"""Core value types shared by every other module.

IRIs, typed literals, triples and prefix handling. All values here are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from mathkg.errors import MalformedQName, UnknownPrefix

# Vocabulary namespaces. The two mardi namespaces hold the model-side
# (mmdb) and algorithm-side (madb) halves of the merged ontology.
MMDB = "https://mardi4nfdi.de/mathmoddb#"
MADB = "https://mardi4nfdi.de/mathalgodb/0.1#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

DEFAULT_PREFIXES: dict[str, str] = {
    "madb": MADB,
    "mmdb": MMDB,
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
}

# Literal datatypes. The closed set supported by the engine; everything
# else is rejected at parse time.
STRING = "string"
INTEGER = "integer"
BOOLEAN = "boolean"
DECIMAL = "decimal"
LATEX = "latex-expression"
EXTERNAL_ID = "external-id"

DATATYPES = (STRING, INTEGER, BOOLEAN, DECIMAL, LATEX, EXTERNAL_ID)

DATATYPE_IRI = {
    STRING: XSD + "string",
    INTEGER: XSD + "integer",
    BOOLEAN: XSD + "boolean",
    DECIMAL: XSD + "decimal",
    LATEX: MMDB + "latexExpression",
    EXTERNAL_ID: MMDB + "externalId",
}
IRI_DATATYPE = {v: k for k, v in DATATYPE_IRI.items()}

_INTEGER_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_RE = re.compile(r"^[+-]?[0-9]*\.[0-9]+$")
_LANG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI. Equality is exact string equality."""

    value: str

    def __post_init__(self) -> None:
        if not self.value or "://" not in self.value:
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Literal:
    """A typed literal. The lexical form is stored verbatim, never normalized."""

    lexical: str
    datatype: str = STRING
    lang: str | None = None

    def __post_init__(self) -> None:
        if self.datatype not in DATATYPES:
            raise ValueError(f"unknown datatype: {self.datatype!r}")
        if self.lang is not None:
            if self.datatype != STRING:
                raise ValueError("language tag only allowed on string literals")
            if not _LANG_RE.match(self.lang):
                raise ValueError(f"malformed language tag: {self.lang!r}")
        if not lexical_valid(self.lexical, self.datatype):
            raise ValueError(
                f"invalid {self.datatype} lexical form: {self.lexical!r}"
            )

    def __str__(self) -> str:
        return self.lexical


Term = Iri | Literal


def lexical_valid(lexical: str, datatype: str) -> bool:
    if datatype == INTEGER:
        return bool(_INTEGER_RE.match(lexical))
    if datatype == DECIMAL:
        return bool(_DECIMAL_RE.match(lexical))
    if datatype == BOOLEAN:
        return lexical in ("true", "false")
    return True


def boolean(value: bool) -> Literal:
    return Literal("true" if value else "false", BOOLEAN)


def integer(value: int) -> Literal:
    return Literal(str(value), INTEGER)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Term

    def __iter__(self):
        return iter((self.subject, self.predicate, self.object))


def term_key(term: Term | None) -> tuple:
    """Total order over terms: IRIs before literals, then lexicographic."""
    if term is None:
        return (-1, "")
    if isinstance(term, Iri):
        return (0, term.value)
    return (1, term.lexical, term.datatype, term.lang or "")


def triple_key(t: Triple) -> tuple:
    return (t.subject.value, t.predicate.value, term_key(t.object))


def expand_prefix(qname: str, prefixes: dict[str, str]) -> Iri:
    """Expand ``prefix:local`` against a prefix map.

    The local part may be empty ("mmdb:" expands to the bare namespace IRI).
    """
    if qname.count(":") != 1:
        raise MalformedQName(f"expected exactly one ':' in {qname!r}")
    prefix, local = qname.split(":", 1)
    if prefix not in prefixes:
        raise UnknownPrefix(f"unregistered prefix {prefix!r} in {qname!r}")
    return Iri(prefixes[prefix] + local)


_LOCAL_RE = re.compile(r"^[A-Za-z0-9_.-]*$")


def compact_iri(iri: Iri, prefixes: dict[str, str]) -> str:
    """Render an IRI as ``prefix:local`` when a registered namespace matches.

    Longest namespace wins; falls back to ``<full-iri>`` when no prefix
    applies or the local part would not survive re-parsing.
    """
    best: tuple[str, str] | None = None
    for prefix, ns in prefixes.items():
        if iri.value.startswith(ns) and (best is None or len(ns) > len(best[1])):
            best = (prefix, ns)
    if best is not None:
        local = iri.value[len(best[1]):]
        if _LOCAL_RE.match(local) and not local.startswith((".", "-")):
            return f"{best[0]}:{local}"
    return f"<{iri.value}>"


def local_name(iri: Iri) -> str:
    """Fragment or last path segment, used for display and golden comparisons."""
    value = iri.value
    for sep in ("#", "/"):
        if sep in value:
            return value.rsplit(sep, 1)[1]
    return value


TENSOR_ORDERS = ("scalar", "vector", "matrix", "higher-order tensor")

# Flags that only make sense on matrix-shaped quantities.
MATRIX_FLAGS = frozenset(
    {"symmetric", "positive-definite", "sparse", "toeplitz", "invertible"}
)


@dataclass(frozen=True, slots=True)
class QuantityAnnotation:
    """Shape and vocabulary metadata attached to a quantity."""

    tensor_order: str = "scalar"
    structural_flags: frozenset[str] = field(default_factory=frozenset)
    qudt_id: str | None = None
    wikidata_id: str | None = None

    def __post_init__(self) -> None:
        if self.tensor_order not in TENSOR_ORDERS:
            raise ValueError(f"unknown tensor order: {self.tensor_order!r}")
        if self.tensor_order not in ("matrix", "higher-order tensor"):
            bad = self.structural_flags & MATRIX_FLAGS
            if bad:
                raise ValueError(
                    f"matrix-structure flags {sorted(bad)} require a matrix "
                    f"or higher-order tensor, not {self.tensor_order}"
                )
