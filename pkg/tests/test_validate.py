from __future__ import annotations

import json

from hypothesis import given, settings

import strategies as stg
from mathkg.model import (
    EXTERNAL_ID,
    MADB,
    MMDB,
    Iri,
    Literal,
    Triple,
)
from mathkg.schema import (
    CONTAINS_QUANTITY,
    MODELED_BY,
    PRECLUDES,
    QUDT_ID,
    RDF_TYPE,
    WIKIDATA_ID,
    schema,
)
from mathkg.store import Graph
from mathkg.validate import (
    quantity_annotation,
    repair_inverses,
    unhoused_quantities,
    validate,
)


def _typed(graph: Graph, local: str, class_name: str, ns: str = MMDB) -> Iri:
    iri = Iri(ns + local)
    graph.insert(Triple(iri, RDF_TYPE, schema().class_named(class_name).iri))
    return iri


def test_seed_dataset_has_zero_errors(seed):
    report = validate(seed)
    assert report.error_count == 0
    # warnings are acceptable; they flag curation gaps, not schema breaks
    assert all(f.severity == "warning" for f in report.findings)


def test_v1_untyped_range_is_error():
    g = Graph()
    problem = _typed(g, "P", "ResearchProblem")
    g.insert(Triple(problem, MODELED_BY, Iri(MMDB + "B")))  # B has no type
    report = validate(g)
    assert any(f.code == "V1" and f.severity == "error" for f in report.findings)


def test_v1_literal_object_on_relation_is_error():
    g = Graph()
    problem = _typed(g, "P", "ResearchProblem")
    g.insert(Triple(problem, MODELED_BY, Literal("not an iri")))
    assert validate(g).by_code("V1")


def test_v1_accepts_both_orientations_of_equivalence():
    g = Graph()
    task = _typed(g, "T", "ComputationalTask")
    algo = _typed(g, "A", "AlgorithmicTask", MADB)
    g.insert(Triple(algo, Iri(MMDB + "equivalentTo"), task))  # reversed orientation
    assert not validate(g).by_code("V1")


def test_v2_missing_inverse_is_warning_and_repairable():
    g = Graph()
    problem = _typed(g, "P", "ResearchProblem")
    model = _typed(g, "M", "MathematicalModel")
    g.insert(Triple(problem, MODELED_BY, model))
    report = validate(g)
    assert any(f.code == "V2" for f in report.findings)
    repaired = repair_inverses(g)
    assert Triple(model, Iri(MMDB + "models"), problem) in repaired
    assert not validate(repaired).by_code("V2")


def test_repair_does_not_mirror_symmetric_equivalence():
    g = Graph()
    task = _typed(g, "T", "ComputationalTask")
    algo = _typed(g, "A", "AlgorithmicTask", MADB)
    g.insert(Triple(task, Iri(MMDB + "equivalentTo"), algo))
    repaired = repair_inverses(g)
    assert len(repaired) == len(g)


def test_v3_undeclared_quantity_is_error():
    g = Graph()
    form = _typed(g, "F", "MathematicalFormulation")
    g.insert(Triple(form, CONTAINS_QUANTITY, Iri(MMDB + "ghost")))
    assert any(f.code == "V3" and f.severity == "error" for f in validate(g).findings)


def test_v4_quantity_without_kind_is_warning():
    g = Graph()
    _typed(g, "q", "Quantity")
    assert validate(g).by_code("V4")


def test_v5_shapes():
    g = Graph()
    kind = _typed(g, "Voltage", "QuantityKind")
    g.insert(Triple(kind, QUDT_ID,
                    Literal("https://qudt.org/vocab/quantitykind/Voltage", EXTERNAL_ID)))
    g.insert(Triple(kind, WIKIDATA_ID, Literal("Q25428", EXTERNAL_ID)))
    assert not validate(g).by_code("V5")
    g.insert(Triple(kind, WIKIDATA_ID, Literal("25428", EXTERNAL_ID)))  # missing Q
    g.insert(Triple(kind, QUDT_ID, Literal("http://elsewhere.example/x", EXTERNAL_ID)))
    findings = validate(g).by_code("V5")
    assert len(findings) == 2
    assert all(f.severity == "warning" for f in findings)


def test_v6_task_without_equivalence_is_warning():
    g = Graph()
    _typed(g, "T", "ComputationalTask")
    assert validate(g).by_code("V6")


def test_v6_counts_incoming_equivalence(seed):
    assert not validate(seed).by_code("V6")


def test_v7_selection_target_must_be_formulation():
    g = Graph()
    algorithm = _typed(g, "Alg", "Algorithm", MADB)
    target = _typed(g, "NotAForm", "Benchmark", MADB)
    g.insert(Triple(algorithm, PRECLUDES, target))
    findings = validate(g).by_code("V7")
    assert findings and all(f.severity == "error" for f in findings)


def test_v8_expression_without_quantities_is_warning():
    g = Graph()
    form = _typed(g, "F", "MathematicalFormulation")
    g.insert(Triple(form, Iri(MMDB + "definingFormulation"),
                    Literal(r"\dot{v}=g", "latex-expression")))
    assert validate(g).by_code("V8")


def test_findings_sorted_and_serializable():
    g = Graph()
    problem = _typed(g, "P", "ResearchProblem")
    g.insert(Triple(problem, MODELED_BY, Iri(MMDB + "B")))
    _typed(g, "q", "Quantity")
    report = validate(g)
    keys = [(f.severity, f.code, f.subject.value) for f in report.findings]
    assert keys == sorted(keys, key=lambda k: (("error", "warning").index(k[0]), k[1], k[2]))
    payload = json.loads(report.as_json())
    assert payload["errors"] == report.error_count
    assert report.as_text({"mmdb": MMDB}).startswith(f"{report.error_count} error(s)")


def test_validate_never_mutates(seed):
    before = set(seed)
    validate(seed)
    assert set(seed) == before


@given(stg.triple_lists(max_size=25))
@settings(max_examples=150, deadline=None)
def test_repair_is_idempotent_on_random_graphs(triples):
    g = Graph()
    for t in triples:
        g.insert(t)
    once = repair_inverses(g)
    twice = repair_inverses(once)
    assert set(once) == set(twice)


def test_repair_idempotent_on_seed(seed):
    assert set(repair_inverses(seed)) == set(seed)


def test_quantity_annotation_reader(seed):
    ann = quantity_annotation(seed, Iri(MMDB + "G"))
    assert ann.tensor_order == "matrix"
    assert ann.structural_flags == {"sparse"}
    voltage = quantity_annotation(seed, Iri(MMDB + "Voltage"))
    assert voltage.qudt_id == "https://qudt.org/vocab/quantitykind/Voltage"
    assert voltage.wikidata_id == "Q25428"


def test_unhoused_quantities_on_seed(seed):
    # the membrane potential exists only as the voltage specialization example
    assert [q.value.rsplit("#", 1)[-1] for q in unhoused_quantities(seed)] == [
        "MembranePotential"
    ]


def test_seed_houses_every_formula_symbol(seed):
    from mathkg.schema import SYMBOL

    housed = set()
    for q in set(seed.subjects_of_type(schema().class_named("Quantity").iri)) - set(
        unhoused_quantities(seed)
    ):
        housed.update(o.lexical for o in seed.objects(q, SYMBOL) if isinstance(o, Literal))
    expected = {"v", "g", "ρ", "C_D", "A", "m", "s_m", "i_m", "α", "G", "P_m", "N_R",
                "t", "x", "b"}
    assert expected <= housed
