"""Algorithm selection via requires/recommends/precludes pattern matching.

A pattern is a mathematical formulation carrying only property pairs. A
pattern matches a formulation when every model-namespace (predicate,
value) pair of the pattern also holds on the formulation -- plain subset
inclusion with exact pair equality, the same semantics the reference
selection query encodes with nested NOT EXISTS filters.

Verdicts: an algorithm is Excluded when any precluded pattern matches or
any required pattern fails, Recommended when it is not excluded and at
least one recommended pattern matches, and Possible otherwise. An
algorithm with no selection edges at all is therefore Possible for every
formulation.

The property vocabulary is open: any model-namespace predicate
participates, nothing is whitelisted. Matching is exact; ordered
comparisons (a smoothness order of 5 satisfying a pattern requiring 4)
are deliberately not performed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from mathkg.errors import NotAFormulation, NotAnAlgorithm, UnknownEntity
from mathkg.model import MMDB, Iri, Term, compact_iri
from mathkg.schema import (
    APPLIES_MODEL,
    CONTAINED_AS_FORMULATION_IN,
    EQUIVALENT_TO,
    MODELED_BY,
    PRECLUDES,
    RDF_TYPE,
    RECOMMENDS,
    REQUIRES,
    SOLVES,
    schema,
)
from mathkg.store import Graph

PropertySet = frozenset[tuple[Iri, Term]]

RECOMMENDED = "Recommended"
POSSIBLE = "Possible"
EXCLUDED = "Excluded"


@dataclass(frozen=True, slots=True)
class Reason:
    relation: str  # requires | recommends | precludes
    pattern: Iri
    matched: bool

    def as_dict(self) -> dict:
        return {"relation": self.relation, "pattern": self.pattern.value, "matched": self.matched}


@dataclass(frozen=True, slots=True)
class Verdict:
    algorithm: Iri
    status: str
    reasons: tuple[Reason, ...]

    def as_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.value,
            "status": self.status,
            "reasons": [r.as_dict() for r in self.reasons],
        }


@dataclass(frozen=True, slots=True)
class Recommendation:
    task: Iri
    formulation: Iri
    verdicts: tuple[Verdict, ...]  # Recommended then Possible, ranked
    excluded: tuple[Verdict, ...]

    def as_dict(self) -> dict:
        return {
            "task": self.task.value,
            "formulation": self.formulation.value,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "excluded": [v.as_dict() for v in self.excluded],
        }

    def as_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def formulation_properties(graph: Graph, formulation: Iri) -> PropertySet:
    """Model-namespace property pairs of a formulation.

    rdf:type and the structural schema relations (containment, model
    linkage, ...) are excluded; open-vocabulary flags such as stiffness,
    linearity or a smoothness order are what remains.
    """
    reg = schema()
    formulation_class = reg.class_named("MathematicalFormulation").iri
    if formulation_class not in graph.types_of(formulation):
        raise NotAFormulation(f"{formulation.value} is not a mathematical formulation")
    return _properties(graph, formulation)


def _properties(graph: Graph, subject: Iri) -> PropertySet:
    reg = schema()
    return frozenset(
        (p, o)
        for p, o in graph.properties_of(subject, MMDB)
        if p != RDF_TYPE and not reg.is_relation(p)
    )


def pattern_matches(form_props: PropertySet, pattern_props: PropertySet) -> bool:
    """True when every pattern pair also holds on the formulation."""
    return pattern_props <= form_props


def _selection_edges(graph: Graph, algorithm: Iri) -> list[tuple[str, Iri]]:
    edges = []
    for relation, predicate in (
        ("requires", REQUIRES),
        ("recommends", RECOMMENDS),
        ("precludes", PRECLUDES),
    ):
        for target in graph.objects(algorithm, predicate):
            if isinstance(target, Iri):
                edges.append((relation, target))
    return edges


def classify_against_properties(graph: Graph, algorithm: Iri, form_props: PropertySet) -> Verdict:
    """Verdict for an algorithm against an explicit property set.

    This is the what-if entry point: callers may pass a formulation's
    stored properties with pairs added or removed.
    """
    reasons: list[Reason] = []
    excluded = False
    recommended = False
    for relation, pattern in _selection_edges(graph, algorithm):
        matched = pattern_matches(form_props, _properties(graph, pattern))
        reasons.append(Reason(relation, pattern, matched))
        if relation == "precludes" and matched:
            excluded = True
        elif relation == "requires" and not matched:
            excluded = True
        elif relation == "recommends" and matched:
            recommended = True
    status = EXCLUDED if excluded else RECOMMENDED if recommended else POSSIBLE
    reasons.sort(key=lambda r: (r.relation, r.pattern.value))
    return Verdict(algorithm, status, tuple(reasons))


def classify_algorithm(graph: Graph, algorithm: Iri, formulation: Iri) -> Verdict:
    reg = schema()
    if reg.class_named("Algorithm").iri not in graph.types_of(algorithm):
        raise NotAnAlgorithm(f"{algorithm.value} is not an algorithm")
    return classify_against_properties(graph, algorithm, formulation_properties(graph, formulation))


def _rank(verdicts: list[Verdict]) -> tuple[tuple[Verdict, ...], tuple[Verdict, ...]]:
    order = {RECOMMENDED: 0, POSSIBLE: 1}
    kept = sorted(
        (v for v in verdicts if v.status != EXCLUDED),
        key=lambda v: (order[v.status], v.algorithm.value),
    )
    dropped = sorted(
        (v for v in verdicts if v.status == EXCLUDED), key=lambda v: v.algorithm.value
    )
    return tuple(kept), tuple(dropped)


def recommend_for_task(
    graph: Graph,
    task: Iri,
    formulation: Iri,
    overrides: tuple[frozenset[tuple[Iri, Term]], frozenset[tuple[Iri, Term]]] | None = None,
) -> Recommendation:
    """Classify every algorithm solving the task's equivalent algorithmic task.

    ``overrides`` is an optional (added, removed) pair of property-pair
    sets applied to an ephemeral copy of the formulation's properties.
    """
    props = formulation_properties(graph, formulation)
    if overrides is not None:
        added, removed = overrides
        props = frozenset((props | added) - removed)
    verdicts = []
    seen: set[Iri] = set()
    for algo_task in graph.objects(task, EQUIVALENT_TO):
        if not isinstance(algo_task, Iri):
            continue
        for algorithm in graph.subjects(SOLVES, algo_task):
            if algorithm not in seen:
                seen.add(algorithm)
                verdicts.append(classify_against_properties(graph, algorithm, props))
    kept, dropped = _rank(verdicts)
    return Recommendation(task, formulation, kept, dropped)


def recommend(graph: Graph, research_problem: Iri) -> list[Recommendation]:
    """Recommendations for every (task, formulation) pair of a problem's models.

    Follows the selection query's own probes: modeledBy from the problem,
    appliesModel from tasks, equivalentTo toward algorithmic tasks and
    solves from algorithms, pairing each task with every formulation
    contained in the model it applies. Returns an empty list when the
    problem has no models.
    """
    reg = schema()
    if reg.class_named("ResearchProblem").iri not in graph.types_of(research_problem):
        raise UnknownEntity(f"{research_problem.value} is not a known research problem")
    out: list[Recommendation] = []
    models = [m for m in graph.objects(research_problem, MODELED_BY) if isinstance(m, Iri)]
    for model in models:
        tasks = graph.subjects(APPLIES_MODEL, model)
        formulations = graph.subjects(CONTAINED_AS_FORMULATION_IN, model)
        for task in tasks:
            for formulation in formulations:
                out.append(recommend_for_task(graph, task, formulation))
    out.sort(key=lambda r: (r.task.value, r.formulation.value))
    return out


def recommendation_table(recommendations: list[Recommendation], prefixes: dict[str, str]) -> str:
    """Human-readable rendering used by the command line."""
    lines = []
    for rec in recommendations:
        lines.append(
            f"task {compact_iri(rec.task, prefixes)}  "
            f"formulation {compact_iri(rec.formulation, prefixes)}"
        )
        for verdict in rec.verdicts + rec.excluded:
            reasons = ", ".join(
                f"{r.relation} {compact_iri(r.pattern, prefixes)}"
                f"[{'matched' if r.matched else 'unmatched'}]"
                for r in verdict.reasons
            )
            lines.append(
                f"  {verdict.status:11} {compact_iri(verdict.algorithm, prefixes)}"
                + (f"  ({reasons})" if reasons else "")
            )
    return "\n".join(lines) + "\n" if lines else "no recommendations\n"
