"""Ontology schema registry: the twelve classes and their relations.

Predicates that the source vocabulary does not spell out verbatim are
derived by lowerCamelCasing the display name of the relation, so every
predicate IRI is reconstructible from the registry alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from mathkg.model import MADB, MMDB, RDF, RDFS, Iri

RDF_TYPE = Iri(RDF + "type")
RDFS_LABEL = Iri(RDFS + "label")
RDFS_COMMENT = Iri(RDFS + "comment")

MMDB_CLASS_NAMES = (
    "ResearchField",
    "ResearchProblem",
    "MathematicalModel",
    "MathematicalFormulation",
    "Quantity",
    "QuantityKind",
    "ComputationalTask",
)
MADB_CLASS_NAMES = (
    "AlgorithmicTask",
    "Algorithm",
    "Software",
    "Benchmark",
    "Publication",
)

FORMULATION_ROLES = (
    "Formulation",
    "Assumption",
    "Definition",
    "InitialCondition",
    "FinalCondition",
    "BoundaryCondition",
    "ConstraintCondition",
)
TASK_QUANTITY_ROLES = ("Input", "Output", "Parameter", "Constant", "Objective")
PUBLICATION_ROLES = ("UsedIn", "DocumentedIn", "InventedIn", "SurveyedIn", "StudiedIn")


@dataclass(frozen=True, slots=True)
class OntologyClass:
    name: str
    namespace: str

    @property
    def iri(self) -> Iri:
        return Iri(self.namespace + self.name)


@dataclass(frozen=True, slots=True)
class RelationSpec:
    """A directed relation and, when the ontology declares one, its inverse.

    ``domain`` is None for the publication relations, which accept any
    class as subject. ``symmetric`` marks the task-equivalence relation,
    whose single edge already states both directions; it is never
    inverse-mirrored.
    """

    forward: Iri
    inverse: Iri | None
    domain: OntologyClass | None
    range: OntologyClass
    role: str | None = None
    symmetric: bool = False


class OntologySchema:
    """Immutable lookup structure over classes and relation specs."""

    def __init__(self, classes: tuple[OntologyClass, ...], relations: tuple[RelationSpec, ...]):
        self.classes = classes
        self.relations = relations
        self._class_by_iri = {c.iri: c for c in classes}
        self._class_by_name = {c.name: c for c in classes}
        self._spec_by_predicate: dict[Iri, tuple[RelationSpec, bool]] = {}
        for spec in relations:
            self._spec_by_predicate[spec.forward] = (spec, True)
            if spec.inverse is not None:
                self._spec_by_predicate[spec.inverse] = (spec, False)

    def class_named(self, name: str) -> OntologyClass:
        return self._class_by_name[name]

    def class_for_iri(self, iri: Iri) -> OntologyClass | None:
        return self._class_by_iri.get(iri)

    def is_relation(self, predicate: Iri) -> bool:
        return predicate in self._spec_by_predicate

    def relation(self, predicate: Iri) -> tuple[RelationSpec, bool] | None:
        """Spec and direction for a predicate; True means forward."""
        return self._spec_by_predicate.get(predicate)

    def inverse_of(self, predicate: Iri) -> Iri | None:
        entry = self._spec_by_predicate.get(predicate)
        if entry is None:
            return None
        spec, is_forward = entry
        return spec.inverse if is_forward else spec.forward

    def domain_range(self, predicate: Iri) -> tuple[OntologyClass | None, OntologyClass | None]:
        """Expected subject/object classes for an edge using ``predicate``."""
        entry = self._spec_by_predicate.get(predicate)
        if entry is None:
            return (None, None)
        spec, is_forward = entry
        if is_forward:
            return (spec.domain, spec.range)
        return (spec.range, spec.domain)

    def relation_by_local_name(self, name: str) -> Iri | None:
        for predicate in self._spec_by_predicate:
            if predicate.value.rsplit("#", 1)[-1] == name:
                return predicate
        return None


def _mmdb(local: str) -> Iri:
    return Iri(MMDB + local)


def _madb(local: str) -> Iri:
    return Iri(MADB + local)


@lru_cache(maxsize=1)
def schema() -> OntologySchema:
    classes = tuple(
        [OntologyClass(n, MMDB) for n in MMDB_CLASS_NAMES]
        + [OntologyClass(n, MADB) for n in MADB_CLASS_NAMES]
    )
    by_name = {c.name: c for c in classes}

    def cls(name: str) -> OntologyClass:
        return by_name[name]

    relations: list[RelationSpec] = [
        RelationSpec(
            _mmdb("containsProblem"), _mmdb("containedInField"),
            cls("ResearchField"), cls("ResearchProblem"),
        ),
        RelationSpec(
            _mmdb("modeledBy"), _mmdb("models"),
            cls("ResearchProblem"), cls("MathematicalModel"),
        ),
        RelationSpec(
            _mmdb("appliedByTask"), _mmdb("appliesModel"),
            cls("MathematicalModel"), cls("ComputationalTask"),
        ),
        RelationSpec(
            _mmdb("containsQuantity"), _mmdb("containedInFormulation"),
            cls("MathematicalFormulation"), cls("Quantity"),
        ),
        RelationSpec(
            _mmdb("isKindOf"), _mmdb("hasSpecialization"),
            cls("Quantity"), cls("QuantityKind"),
        ),
        # Task equivalence is drawn as a single symmetric connector, not an
        # arrow pair: one edge states the equivalence in full.
        RelationSpec(
            _mmdb("equivalentTo"), None,
            cls("ComputationalTask"), cls("AlgorithmicTask"),
            symmetric=True,
        ),
        RelationSpec(
            _madb("solves"), _madb("solvedBy"),
            cls("Algorithm"), cls("AlgorithmicTask"),
        ),
        RelationSpec(
            _madb("implementedBy"), _madb("implements"),
            cls("Algorithm"), cls("Software"),
        ),
        RelationSpec(
            _madb("testedBy"), _madb("tests"),
            cls("Software"), cls("Benchmark"),
        ),
        RelationSpec(
            _madb("instantiates"), _madb("instantiatedBy"),
            cls("Benchmark"), cls("AlgorithmicTask"),
        ),
    ]
    for role in FORMULATION_ROLES:
        relations.append(
            RelationSpec(
                _mmdb(f"contains{role}"), _mmdb(f"containedAs{role}In"),
                cls("MathematicalModel"), cls("MathematicalFormulation"),
                role=role,
            )
        )
    for role in TASK_QUANTITY_ROLES:
        relations.append(
            RelationSpec(
                _mmdb(f"contains{role}"), _mmdb(f"containedAs{role}In"),
                cls("ComputationalTask"), cls("Quantity"),
                role=role,
            )
        )
    # Algorithm selection relations point one way only; no inverse arrows
    # exist for them in the ontology.
    for name in ("requires", "recommends", "precludes"):
        relations.append(
            RelationSpec(
                _madb(name), None,
                cls("Algorithm"), cls("MathematicalFormulation"),
            )
        )
    # Publication provenance applies to every class, hence no domain.
    for role in PUBLICATION_ROLES:
        local = role[0].lower() + role[1:]
        relations.append(
            RelationSpec(_madb(local), None, None, cls("Publication"), role=role)
        )
    return OntologySchema(classes, tuple(relations))


# Well-known predicates used throughout the package.
MODELED_BY = _mmdb("modeledBy")
MODELS = _mmdb("models")
APPLIES_MODEL = _mmdb("appliesModel")
APPLIED_BY_TASK = _mmdb("appliedByTask")
EQUIVALENT_TO = _mmdb("equivalentTo")
CONTAINS_FORMULATION = _mmdb("containsFormulation")
CONTAINED_AS_FORMULATION_IN = _mmdb("containedAsFormulationIn")
CONTAINS_QUANTITY = _mmdb("containsQuantity")
IS_KIND_OF = _mmdb("isKindOf")
SOLVES = _madb("solves")
REQUIRES = _madb("requires")
RECOMMENDS = _madb("recommends")
PRECLUDES = _madb("precludes")

DEFINING_FORMULATION = _mmdb("definingFormulation")
SYMBOL = _mmdb("symbol")
TENSOR_ORDER = _mmdb("tensorOrder")
QUDT_ID = _mmdb("qudtId")
WIKIDATA_ID = _mmdb("wikidataId")
MSC_ID = _mmdb("mscId")
DFG_ID = _mmdb("dfgId")
PHYSH_ID = _mmdb("physhId")

EXTERNAL_ID_PREDICATES = (QUDT_ID, WIKIDATA_ID, MSC_ID, DFG_ID, PHYSH_ID)
