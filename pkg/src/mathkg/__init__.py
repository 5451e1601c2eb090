"""Typed knowledge-graph engine for mathematical models and algorithms."""

from mathkg.model import Iri, Literal, Term, Triple
from mathkg.store import Graph, TriplePattern, Var

__version__ = "0.1.0"

__all__ = ["Graph", "Iri", "Literal", "Term", "Triple", "TriplePattern", "Var", "__version__"]
