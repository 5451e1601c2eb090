"""Exception types raised across the package."""

from __future__ import annotations


class MathKgError(Exception):
    """Base class for all package errors."""


class MalformedQName(MathKgError):
    pass


class UnknownPrefix(MathKgError):
    pass


class ParseError(MathKgError):
    """Lexing/parsing failure with a 1-based source position.

    ``kind`` is one of ``lex``, ``syntax``, ``prefix``, ``datatype``.
    """

    def __init__(self, message: str, line: int, column: int, kind: str = "syntax"):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind

    def as_dict(self) -> dict:
        return {
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "kind": self.kind,
        }


class UnsupportedFeature(ParseError):
    """Query construct outside the supported subset (OPTIONAL, UNION, ...)."""


class NotAFormulation(MathKgError):
    pass


class NotAnAlgorithm(MathKgError):
    pass


class UnknownEntity(MathKgError):
    pass


class EmptyTemplate(MathKgError):
    pass


class UnresolvableReference(MathKgError):
    pass


class UnknownRelation(MathKgError):
    pass
