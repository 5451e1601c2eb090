"""Schema and integrity checks over a graph, plus inverse-edge repair.

Checks are pure and deterministic; problems become report findings, never
exceptions. Each check has a stable code:

V1 relation instance violates the schema domain/range        error
V2 forward edge missing its declared inverse edge            warning
V3 quantity referenced by a formulation is undeclared        error
V4 quantity without an isKindOf link to a quantity kind      warning
V5 external-id literal does not match its shape rule         warning
V6 computational task without any task equivalence           warning
V7 requires/recommends/precludes target not a formulation    error
V8 formulation carries an expression but contains no quantities  warning
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from mathkg.model import (
    BOOLEAN,
    Iri,
    Literal,
    QuantityAnnotation,
    Triple,
    compact_iri,
)
from mathkg.schema import (
    CONTAINS_QUANTITY,
    DEFINING_FORMULATION,
    DFG_ID,
    EQUIVALENT_TO,
    EXTERNAL_ID_PREDICATES,
    IS_KIND_OF,
    MSC_ID,
    PHYSH_ID,
    PRECLUDES,
    QUDT_ID,
    RECOMMENDS,
    REQUIRES,
    TENSOR_ORDER,
    WIKIDATA_ID,
    OntologySchema,
    schema,
)
from mathkg.store import Graph

_SEVERITIES = ("error", "warning")

_WIKIDATA_RE = re.compile(r"^Q[0-9]+$")
_MSC_RE = re.compile(r"^[0-9]{2}(?:[A-Z][0-9]{2})?$")
_QUDT_PREFIX = "https://qudt.org/vocab/"

# Boolean flags on quantities that describe matrix structure.
_FLAG_PREDICATES = {
    "isSymmetric": "symmetric",
    "isPositiveDefinite": "positive-definite",
    "isSparse": "sparse",
    "isToeplitz": "toeplitz",
    "isInvertible": "invertible",
}


@dataclass(frozen=True, slots=True)
class Finding:
    severity: str
    code: str
    subject: Iri
    message: str

    def as_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "subject": self.subject.value,
            "message": self.message,
        }


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def error_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == "error")

    @property
    def warning_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == "warning")

    @property
    def is_clean(self) -> bool:
        return not self.findings

    def by_code(self, code: str) -> list[Finding]:
        return [f for f in self.findings if f.code == code]

    def as_dict(self) -> dict:
        return {
            "errors": self.error_count,
            "warnings": self.warning_count,
            "findings": [f.as_dict() for f in self.findings],
        }

    def as_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def as_text(self, prefixes: dict[str, str] | None = None) -> str:
        prefixes = prefixes or {}
        lines = [f"{self.error_count} error(s), {self.warning_count} warning(s)"]
        for f in self.findings:
            subject = compact_iri(f.subject, prefixes) if prefixes else f.subject.value
            lines.append(f"{f.severity:7} {f.code}  {subject}: {f.message}")
        return "\n".join(lines) + "\n"


def _typed_as(graph: Graph, iri: Iri, class_iri: Iri) -> bool:
    return class_iri in graph.types_of(iri)


def _check_domain_range(graph: Graph, reg: OntologySchema, findings: list[Finding]) -> None:
    for t in graph:
        entry = reg.relation(t.predicate)
        if entry is None:
            continue
        spec, _ = entry
        if not isinstance(t.object, Iri):
            findings.append(Finding(
                "error", "V1", t.subject,
                f"relation {compact_iri(t.predicate, graph.prefixes)} needs an IRI object, "
                f"got literal {t.object.lexical!r}",
            ))
            continue
        domain, range_ = reg.domain_range(t.predicate)
        if spec.symmetric:
            # Either orientation of the symmetric relation is fine.
            ok = (
                (domain is None or _typed_as(graph, t.subject, domain.iri))
                and _typed_as(graph, t.object, range_.iri)
            ) or (
                _typed_as(graph, t.subject, range_.iri)
                and (domain is None or _typed_as(graph, t.object, domain.iri))
            )
            if not ok:
                findings.append(Finding(
                    "error", "V1", t.subject,
                    f"{compact_iri(t.predicate, graph.prefixes)} must link "
                    f"{domain.name if domain else 'anything'} and {range_.name}",
                ))
            continue
        if domain is not None and not _typed_as(graph, t.subject, domain.iri):
            findings.append(Finding(
                "error", "V1", t.subject,
                f"subject of {compact_iri(t.predicate, graph.prefixes)} must be a {domain.name}",
            ))
        if range_ is not None and not _typed_as(graph, t.object, range_.iri):
            findings.append(Finding(
                "error", "V1", t.subject,
                f"object {compact_iri(t.object, graph.prefixes)} of "
                f"{compact_iri(t.predicate, graph.prefixes)} must be a {range_.name}",
            ))


def _check_inverses(graph: Graph, reg: OntologySchema, findings: list[Finding]) -> None:
    for t in graph:
        inverse = reg.inverse_of(t.predicate)
        if inverse is None or not isinstance(t.object, Iri):
            continue
        if Triple(t.object, inverse, t.subject) not in graph:
            findings.append(Finding(
                "warning", "V2", t.subject,
                f"edge {compact_iri(t.predicate, graph.prefixes)} "
                f"{compact_iri(t.object, graph.prefixes)} lacks inverse "
                f"{compact_iri(inverse, graph.prefixes)}",
            ))


def _check_quantities(graph: Graph, reg: OntologySchema, findings: list[Finding]) -> None:
    quantity_class = reg.class_named("Quantity").iri
    kind_class = reg.class_named("QuantityKind").iri
    for t in graph.triples_matching(predicate=CONTAINS_QUANTITY):
        if isinstance(t.object, Iri) and not graph.types_of(t.object):
            findings.append(Finding(
                "error", "V3", t.object,
                "quantity referenced by a formulation has no rdf:type",
            ))
    for q in graph.subjects_of_type(quantity_class):
        kinds = [
            o for o in graph.objects(q, IS_KIND_OF)
            if isinstance(o, Iri) and _typed_as(graph, o, kind_class)
        ]
        if not kinds:
            findings.append(Finding(
                "warning", "V4", q, "quantity has no isKindOf link to a quantity kind",
            ))


def _check_external_ids(graph: Graph, findings: list[Finding]) -> None:
    shapes = {
        QUDT_ID: lambda v: v.startswith(_QUDT_PREFIX),
        WIKIDATA_ID: lambda v: bool(_WIKIDATA_RE.match(v)),
        MSC_ID: lambda v: bool(_MSC_RE.match(v)),
        DFG_ID: lambda v: bool(v),
        PHYSH_ID: lambda v: bool(v),
    }
    for predicate in EXTERNAL_ID_PREDICATES:
        for t in graph.triples_matching(predicate=predicate):
            value = t.object.lexical if isinstance(t.object, Literal) else None
            if value is None or not shapes[predicate](value):
                findings.append(Finding(
                    "warning", "V5", t.subject,
                    f"{compact_iri(predicate, graph.prefixes)} value "
                    f"{value if value is not None else t.object} has the wrong shape",
                ))


def _check_task_equivalence(graph: Graph, reg: OntologySchema, findings: list[Finding]) -> None:
    task_class = reg.class_named("ComputationalTask").iri
    for task in graph.subjects_of_type(task_class):
        has_equivalent = bool(graph.objects(task, EQUIVALENT_TO)) or bool(
            graph.subjects(EQUIVALENT_TO, task)
        )
        if not has_equivalent:
            findings.append(Finding(
                "warning", "V6", task,
                "computational task has no equivalent algorithmic task",
            ))


def _check_selection_targets(graph: Graph, reg: OntologySchema, findings: list[Finding]) -> None:
    formulation_class = reg.class_named("MathematicalFormulation").iri
    for predicate in (REQUIRES, RECOMMENDS, PRECLUDES):
        for t in graph.triples_matching(predicate=predicate):
            if not isinstance(t.object, Iri) or not _typed_as(graph, t.object, formulation_class):
                findings.append(Finding(
                    "error", "V7", t.subject,
                    f"{compact_iri(predicate, graph.prefixes)} target must be a "
                    "mathematical formulation",
                ))


def _check_expressions(graph: Graph, reg: OntologySchema, findings: list[Finding]) -> None:
    formulation_class = reg.class_named("MathematicalFormulation").iri
    for form in graph.subjects_of_type(formulation_class):
        if graph.objects(form, DEFINING_FORMULATION) and not graph.objects(form, CONTAINS_QUANTITY):
            findings.append(Finding(
                "warning", "V8", form,
                "formulation has a defining expression but contains no quantities",
            ))


def validate(graph: Graph) -> ValidationReport:
    reg = schema()
    findings: list[Finding] = []
    _check_domain_range(graph, reg, findings)
    _check_inverses(graph, reg, findings)
    _check_quantities(graph, reg, findings)
    _check_external_ids(graph, findings)
    _check_task_equivalence(graph, reg, findings)
    _check_selection_targets(graph, reg, findings)
    _check_expressions(graph, reg, findings)
    findings.sort(key=lambda f: (_SEVERITIES.index(f.severity), f.code, f.subject.value, f.message))
    return ValidationReport(tuple(findings))


def repair_inverses(graph: Graph) -> Graph:
    """Copy of the graph with every missing schema inverse edge added.

    Idempotent; after repair the V2 check reports nothing. Symmetric
    relations are not mirrored: their single edge is already complete.
    """
    reg = schema()
    repaired = graph.copy()
    for t in graph:
        inverse = reg.inverse_of(t.predicate)
        if inverse is not None and isinstance(t.object, Iri):
            repaired.insert(Triple(t.object, inverse, t.subject))
    return repaired


def quantity_annotation(graph: Graph, quantity: Iri) -> QuantityAnnotation:
    """Assemble shape/vocabulary metadata recorded for a quantity."""
    tensor = "scalar"
    for o in graph.objects(quantity, TENSOR_ORDER):
        if isinstance(o, Literal):
            tensor = o.lexical
    flags = set()
    for local, flag in _FLAG_PREDICATES.items():
        from mathkg.model import MMDB

        for o in graph.objects(quantity, Iri(MMDB + local)):
            if isinstance(o, Literal) and o.datatype == BOOLEAN and o.lexical == "true":
                flags.add(flag)
    qudt = next((o.lexical for o in graph.objects(quantity, QUDT_ID) if isinstance(o, Literal)), None)
    wikidata = next(
        (o.lexical for o in graph.objects(quantity, WIKIDATA_ID) if isinstance(o, Literal)), None
    )
    return QuantityAnnotation(tensor, frozenset(flags), qudt, wikidata)


def unhoused_quantities(graph: Graph) -> list[Iri]:
    """Quantities not contained in any formulation or task."""
    reg = schema()
    containment = [CONTAINS_QUANTITY] + [
        spec.forward
        for spec in reg.relations
        if spec.role is not None and spec.range.name == "Quantity"
    ]
    housed: set[Iri] = set()
    for predicate in containment:
        for t in graph.triples_matching(predicate=predicate):
            if isinstance(t.object, Iri):
                housed.add(t.object)
    quantity_class = reg.class_named("Quantity").iri
    return [q for q in graph.subjects_of_type(quantity_class) if q not in housed]
