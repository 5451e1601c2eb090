from __future__ import annotations

from collections import Counter

from mathkg.model import MADB, MMDB, Iri
from mathkg.schema import (
    FORMULATION_ROLES,
    PUBLICATION_ROLES,
    TASK_QUANTITY_ROLES,
    schema,
)


def test_exactly_twelve_classes():
    assert len(schema().classes) == 12
    names = {c.name for c in schema().classes}
    assert names == {
        "ResearchField", "ResearchProblem", "MathematicalModel",
        "MathematicalFormulation", "Quantity", "QuantityKind",
        "ComputationalTask", "AlgorithmicTask", "Algorithm", "Software",
        "Benchmark", "Publication",
    }


def test_class_namespaces_follow_their_side():
    reg = schema()
    for name in ("ResearchField", "Quantity", "ComputationalTask"):
        assert reg.class_named(name).namespace == MMDB
    for name in ("AlgorithmicTask", "Algorithm", "Software", "Benchmark", "Publication"):
        assert reg.class_named(name).namespace == MADB


def test_modeled_by_pair_registered():
    reg = schema()
    entry = reg.relation(Iri(MMDB + "modeledBy"))
    assert entry is not None
    spec, is_forward = entry
    assert is_forward
    assert spec.inverse == Iri(MMDB + "models")
    assert spec.domain.name == "ResearchProblem"
    assert spec.range.name == "MathematicalModel"


def test_formulation_containment_pair_registered():
    reg = schema()
    assert reg.inverse_of(Iri(MMDB + "containsFormulation")) == Iri(
        MMDB + "containedAsFormulationIn"
    )
    assert reg.inverse_of(Iri(MMDB + "containedAsFormulationIn")) == Iri(
        MMDB + "containsFormulation"
    )


def test_role_families_expand_per_legend():
    reg = schema()
    for role in FORMULATION_ROLES:
        spec, _ = reg.relation(Iri(MMDB + f"contains{role}"))
        assert spec.domain.name == "MathematicalModel"
        assert spec.range.name == "MathematicalFormulation"
    for role in TASK_QUANTITY_ROLES:
        spec, _ = reg.relation(Iri(MMDB + f"contains{role}"))
        assert spec.domain.name == "ComputationalTask"
        assert spec.range.name == "Quantity"
    assert len(FORMULATION_ROLES) == 7
    assert len(TASK_QUANTITY_ROLES) == 5
    assert len(PUBLICATION_ROLES) == 5


def test_publication_relations_apply_to_all_classes():
    reg = schema()
    spec, _ = reg.relation(Iri(MADB + "documentedIn"))
    assert spec.domain is None
    assert spec.range.name == "Publication"
    assert spec.inverse is None


def test_selection_relations_have_no_inverse():
    reg = schema()
    for name in ("requires", "recommends", "precludes"):
        spec, _ = reg.relation(Iri(MADB + name))
        assert spec.inverse is None
        assert spec.domain.name == "Algorithm"
        assert spec.range.name == "MathematicalFormulation"


def test_equivalence_is_symmetric_without_inverse():
    reg = schema()
    spec, _ = reg.relation(Iri(MMDB + "equivalentTo"))
    assert spec.symmetric
    assert spec.inverse is None
    assert {spec.domain.name, spec.range.name} == {"ComputationalTask", "AlgorithmicTask"}


def test_every_inverse_appears_exactly_once():
    reg = schema()
    predicates = [spec.forward for spec in reg.relations]
    predicates += [spec.inverse for spec in reg.relations if spec.inverse is not None]
    counts = Counter(p.value for p in predicates)
    assert all(n == 1 for n in counts.values()), counts.most_common(3)
    # inverse(inverse(p)) == p for every paired relation
    for spec in reg.relations:
        if spec.inverse is not None:
            assert reg.inverse_of(spec.inverse) == spec.forward
            assert reg.inverse_of(spec.forward) == spec.inverse


def test_quantity_kind_link():
    reg = schema()
    spec, _ = reg.relation(Iri(MMDB + "isKindOf"))
    assert spec.inverse == Iri(MMDB + "hasSpecialization")
    assert spec.domain.name == "Quantity"
    assert spec.range.name == "QuantityKind"


def test_schema_stable_across_calls():
    first = schema()
    second = schema()
    assert first is second
    assert len(first.relations) == len(second.relations)


def test_relation_lookup_by_local_name():
    reg = schema()
    assert reg.relation_by_local_name("solves") == Iri(MADB + "solves")
    assert reg.relation_by_local_name("containsProblem") == Iri(MMDB + "containsProblem")
    assert reg.relation_by_local_name("definitelyNotARelation") is None
