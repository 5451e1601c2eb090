"""In-memory indexed triple graph.

Three hash indexes (SPO, POS, OSP) back pattern matching; iteration order
is always lexicographic over expanded IRIs and literal lexical forms, so
every downstream rendering is deterministic.

Concurrency: many readers or one writer. Mutation must not run
concurrently with queries; callers that need snapshot semantics copy the
graph and swap references.
"""

from __future__ import annotations

from dataclasses import dataclass

from mathkg.model import DEFAULT_PREFIXES, Iri, Term, Triple, term_key, triple_key


@dataclass(frozen=True, slots=True)
class Var:
    """A named query variable; usable in any pattern position."""

    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


PatternSlot = Term | Var


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: PatternSlot
    predicate: PatternSlot
    object: PatternSlot

    def variables(self) -> set[str]:
        return {s.name for s in (self.subject, self.predicate, self.object) if isinstance(s, Var)}


class Graph:
    """A set of triples with SPO/POS/OSP indexes and a prefix map."""

    def __init__(self, prefixes: dict[str, str] | None = None):
        self._triples: set[Triple] = set()
        self._spo: dict[Iri, dict[Iri, set[Term]]] = {}
        self._pos: dict[Iri, dict[Term, set[Iri]]] = {}
        self._osp: dict[Term, dict[Iri, set[Iri]]] = {}
        self.prefixes: dict[str, str] = dict(DEFAULT_PREFIXES)
        if prefixes:
            self.prefixes.update(prefixes)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __iter__(self):
        return iter(sorted(self._triples, key=triple_key))

    def copy(self) -> "Graph":
        clone = Graph(self.prefixes)
        for t in self._triples:
            clone.insert(t)
        return clone

    def insert(self, triple: Triple) -> bool:
        """Add a triple; returns False when it was already present."""
        if triple in self._triples:
            return False
        self._triples.add(triple)
        s, p, o = triple
        self._spo.setdefault(s, {}).setdefault(p, set()).add(o)
        self._pos.setdefault(p, {}).setdefault(o, set()).add(s)
        self._osp.setdefault(o, {}).setdefault(s, set()).add(p)
        return True

    def remove(self, triple: Triple) -> bool:
        if triple not in self._triples:
            return False
        self._triples.discard(triple)
        s, p, o = triple

        def prune(index, a, b, c):
            index[a][b].discard(c)
            if not index[a][b]:
                del index[a][b]
            if not index[a]:
                del index[a]

        prune(self._spo, s, p, o)
        prune(self._pos, p, o, s)
        prune(self._osp, o, s, p)
        return True

    # -- pattern matching ---------------------------------------------------

    def triples_matching(
        self,
        subject: Iri | None = None,
        predicate: Iri | None = None,
        object: Term | None = None,
    ) -> list[Triple]:
        """All triples agreeing with the bound positions, sorted."""
        if subject is not None:
            preds = self._spo.get(subject, {})
            if predicate is not None:
                objs = preds.get(predicate, set())
                candidates = [
                    Triple(subject, predicate, o)
                    for o in objs
                    if object is None or o == object
                ]
            else:
                candidates = [
                    Triple(subject, p, o)
                    for p, objs in preds.items()
                    for o in objs
                    if object is None or o == object
                ]
        elif predicate is not None:
            by_obj = self._pos.get(predicate, {})
            if object is not None:
                candidates = [Triple(s, predicate, object) for s in by_obj.get(object, set())]
            else:
                candidates = [
                    Triple(s, predicate, o) for o, subs in by_obj.items() for s in subs
                ]
        elif object is not None:
            by_subj = self._osp.get(object, {})
            candidates = [
                Triple(s, p, object) for s, preds in by_subj.items() for p in preds
            ]
        else:
            candidates = list(self._triples)
        candidates.sort(key=triple_key)
        return candidates

    def match(self, pattern: TriplePattern) -> list[dict[str, Term]]:
        """Bindings for every triple unifying with the pattern.

        A fully bound pattern yields one empty binding when present and
        none otherwise. Repeated variables within the pattern must bind
        consistently. Results are sorted by binding values.
        """
        has_vars = bool(pattern.variables())
        s = pattern.subject if isinstance(pattern.subject, Iri) else None
        p = pattern.predicate if isinstance(pattern.predicate, Iri) else None
        o = pattern.object if not isinstance(pattern.object, Var) else None
        # Literal subjects/predicates can never match anything.
        if not isinstance(pattern.subject, (Iri, Var)):
            return []
        if not isinstance(pattern.predicate, (Iri, Var)):
            return []
        results: list[dict[str, Term]] = []
        for triple in self.triples_matching(s, p, o):
            binding: dict[str, Term] = {}
            ok = True
            for slot, value in (
                (pattern.subject, triple.subject),
                (pattern.predicate, triple.predicate),
                (pattern.object, triple.object),
            ):
                if isinstance(slot, Var):
                    if slot.name in binding and binding[slot.name] != value:
                        ok = False
                        break
                    binding[slot.name] = value
            if ok:
                results.append(binding)
        results.sort(key=lambda b: [term_key(v) for _, v in sorted(b.items())])
        # Fully bound patterns carry no variables; dedupe the empty binding.
        if not has_vars:
            return [{}] if results else []
        return results

    def properties_of(self, subject: Iri, namespace: str) -> frozenset[tuple[Iri, Term]]:
        """(predicate, object) pairs of ``subject`` inside ``namespace``.

        No predicate is special-cased: rdf:type drops out only because it
        lives outside the filtered namespace.
        """
        pairs = set()
        for p, objs in self._spo.get(subject, {}).items():
            if p.value.startswith(namespace):
                for o in objs:
                    pairs.add((p, o))
        return frozenset(pairs)

    def subjects_of_type(self, class_iri: Iri) -> list[Iri]:
        from mathkg.schema import RDF_TYPE

        by_obj = self._pos.get(RDF_TYPE, {})
        return sorted(by_obj.get(class_iri, set()), key=term_key)

    def types_of(self, subject: Iri) -> list[Iri]:
        from mathkg.schema import RDF_TYPE

        objs = self._spo.get(subject, {}).get(RDF_TYPE, set())
        return sorted((o for o in objs if isinstance(o, Iri)), key=term_key)

    def objects(self, subject: Iri, predicate: Iri) -> list[Term]:
        return sorted(self._spo.get(subject, {}).get(predicate, set()), key=term_key)

    def subjects(self, predicate: Iri, object: Term) -> list[Iri]:
        return sorted(self._pos.get(predicate, {}).get(object, set()), key=term_key)

    def mentions(self, iri: Iri) -> bool:
        """True when the IRI occurs anywhere in the graph."""
        return iri in self._spo or iri in self._pos or iri in self._osp
