from __future__ import annotations

import itertools

import pytest

from mathkg.errors import NotAFormulation, NotAnAlgorithm, UnknownEntity
from mathkg.model import MADB, MMDB, Iri, Triple, boolean, integer
from mathkg.recommend import (
    EXCLUDED,
    POSSIBLE,
    RECOMMENDED,
    classify_against_properties,
    classify_algorithm,
    formulation_properties,
    pattern_matches,
    recommend,
)
from mathkg.schema import RDF_TYPE, schema
from mathkg.sparql import evaluate, parse_query
from mathkg.store import Graph


def _mmdb(local: str) -> Iri:
    return Iri(MMDB + local)


def _madb(local: str) -> Iri:
    return Iri(MADB + local)


def test_formulation_properties_airdrag(seed):
    props = formulation_properties(seed, _mmdb("FreeFallEquationAirDrag"))
    assert (_mmdb("isStiff"), boolean(True)) in props
    assert (_mmdb("isLinear"), boolean(False)) in props
    # structural containment edges are filtered out
    assert all(not p.value.endswith("containsQuantity") for p, _ in props)
    assert all(not p.value.endswith("containedAsFormulationIn") for p, _ in props)


def test_formulation_properties_vacuum_smoothness(seed):
    props = formulation_properties(seed, _mmdb("FreeFallEquationVacuum"))
    assert (_mmdb("smoothnessOrder"), integer(4)) in props


def test_formulation_properties_empty_for_flagless():
    g = Graph()
    form = _mmdb("Bare")
    g.insert(Triple(form, RDF_TYPE, schema().class_named("MathematicalFormulation").iri))
    assert formulation_properties(g, form) == frozenset()


def test_formulation_properties_rejects_non_formulations(seed):
    with pytest.raises(NotAFormulation):
        formulation_properties(seed, _mmdb("Pomology"))


def test_pattern_matches_subset_semantics():
    stiff = frozenset({(_mmdb("isStiff"), boolean(True))})
    form = frozenset({(_mmdb("isStiff"), boolean(True)), (_mmdb("isLinear"), boolean(False))})
    assert pattern_matches(form, stiff)
    assert pattern_matches(form, frozenset())  # vacuous subset
    assert not pattern_matches(frozenset({(_mmdb("smoothnessOrder"), integer(4))}), stiff)


def test_matching_is_exact_not_ordered():
    order5 = frozenset({(_mmdb("smoothnessOrder"), integer(5))})
    needs4 = frozenset({(_mmdb("smoothnessOrder"), integer(4))})
    assert not pattern_matches(order5, needs4)


# -- the published verdicts ---------------------------------------------------

VERDICTS = [
    ("RKex11", "FreeFallEquationAirDrag", EXCLUDED),
    ("RKim11", "FreeFallEquationAirDrag", RECOMMENDED),
    ("RK44kutta", "FreeFallEquationAirDrag", EXCLUDED),
    ("RKex11", "FreeFallEquationVacuum", POSSIBLE),
    ("RKim11", "FreeFallEquationVacuum", POSSIBLE),
    ("RK44kutta", "FreeFallEquationVacuum", RECOMMENDED),
    ("FilteredBackprojection", "TomographyLinearSystem", RECOMMENDED),
    ("Kaczmarz", "TomographyLinearSystem", POSSIBLE),
    ("ConjugateGradient", "TomographyLinearSystem", EXCLUDED),
    ("ConjugateGradient", "SpdLinearSystem", POSSIBLE),
    ("TrenchAlgorithm", "ToeplitzLinearSystem", RECOMMENDED),
    ("ExpectationMaximization", "PoissonCountLinearSystem", RECOMMENDED),
    ("ExpectationMaximization", "TomographyLinearSystem", EXCLUDED),
    ("LUDecomposition", "TomographyLinearSystem", POSSIBLE),
]


@pytest.mark.parametrize("algorithm,formulation,expected", VERDICTS)
def test_published_verdicts(seed, algorithm, formulation, expected):
    verdict = classify_algorithm(seed, _madb(algorithm), _mmdb(formulation))
    assert verdict.status == expected


def test_exclusion_reasons_distinguish_requires_from_precludes(seed):
    stiff = classify_algorithm(seed, _madb("RKex11"), _mmdb("FreeFallEquationAirDrag"))
    assert any(r.relation == "precludes" and r.matched for r in stiff.reasons)
    cg = classify_algorithm(seed, _madb("ConjugateGradient"), _mmdb("TomographyLinearSystem"))
    assert any(r.relation == "requires" and not r.matched for r in cg.reasons)
    assert all(r.relation == "requires" for r in cg.reasons)


def test_reasons_list_every_consulted_pattern(seed):
    verdict = classify_algorithm(seed, _madb("RK44kutta"), _mmdb("FreeFallEquationVacuum"))
    consulted = {(r.relation, r.pattern.value.rsplit("#", 1)[-1]) for r in verdict.reasons}
    assert consulted == {
        ("requires", "SmoothOrder4Pattern"),
        ("recommends", "SmoothOrder4Pattern"),
        ("precludes", "StiffODEPattern"),
    }


def test_algorithm_without_edges_is_always_possible(seed):
    for formulation in ("TomographyLinearSystem", "SpdLinearSystem",
                        "ToeplitzLinearSystem", "FreeFallEquationVacuum"):
        verdict = classify_algorithm(seed, _madb("LUDecomposition"), _mmdb(formulation))
        assert verdict.status == POSSIBLE
        assert verdict.reasons == ()


def test_classify_rejects_non_algorithms(seed):
    with pytest.raises(NotAnAlgorithm):
        classify_algorithm(seed, _madb("Brusselator"), _mmdb("FreeFallEquationVacuum"))


def test_what_if_override_moves_forward_euler(seed):
    base = formulation_properties(seed, _mmdb("FreeFallEquationAirDrag"))
    without_stiff = frozenset(p for p in base if p[0] != _mmdb("isStiff"))
    verdict = classify_against_properties(seed, _madb("RKex11"), without_stiff)
    assert verdict.status == POSSIBLE


def test_monotone_exclusion(seed):
    # adding property pairs can never rescue an algorithm excluded via precludes
    base = formulation_properties(seed, _mmdb("FreeFallEquationAirDrag"))
    richer = base | {(_mmdb("smoothnessOrder"), integer(4))}
    assert classify_against_properties(seed, _madb("RKex11"), richer).status == EXCLUDED
    # and removing pairs can never rescue one excluded via requires
    tomo = formulation_properties(seed, _mmdb("TomographyLinearSystem"))
    poorer = frozenset(itertools.islice(sorted(tomo, key=str), 1))
    assert classify_against_properties(seed, _madb("ConjugateGradient"), poorer).status == EXCLUDED


def test_recommend_traversal(seed):
    recs = recommend(seed, _mmdb("GravitationalEffectsOnFruit"))
    by_form = {}
    for rec in recs:
        names = tuple(v.algorithm.value.rsplit("#", 1)[-1] for v in rec.verdicts)
        if names:
            by_form[rec.formulation.value.rsplit("#", 1)[-1]] = names
    assert set(by_form["FreeFallEquationAirDrag"]) == {"RKim11"}
    assert set(by_form["FreeFallEquationVacuum"]) == {"RKex11", "RKim11", "RK44kutta"}
    # recommended entries sort before possible ones
    assert by_form["FreeFallEquationVacuum"][0] == "RK44kutta"


def test_recommend_orders_excluded_separately(seed):
    recs = recommend(seed, _mmdb("GravitationalEffectsOnFruit"))
    airdrag = next(r for r in recs
                   if r.formulation == _mmdb("FreeFallEquationAirDrag") and r.verdicts)
    excluded = {v.algorithm.value.rsplit("#", 1)[-1] for v in airdrag.excluded}
    assert excluded == {"RKex11", "RK44kutta"}
    assert all(v.status == EXCLUDED for v in airdrag.excluded)


def test_recommend_unknown_problem(seed):
    with pytest.raises(UnknownEntity):
        recommend(seed, _mmdb("NotAProblem"))


def test_recommend_problem_without_models():
    g = Graph()
    problem = _mmdb("Lonely")
    g.insert(Triple(problem, RDF_TYPE, schema().class_named("ResearchProblem").iri))
    assert recommend(g, problem) == []


def test_verdict_independent_of_storage_order(seed):
    # rebuild the seed graph with reversed insertion order
    reordered = Graph(seed.prefixes)
    for t in reversed(list(seed)):
        reordered.insert(t)
    for algorithm in ("RKex11", "RK44kutta", "ConjugateGradient"):
        for formulation in ("FreeFallEquationAirDrag", "TomographyLinearSystem"):
            a = classify_algorithm(seed, _madb(algorithm), _mmdb(formulation))
            b = classify_algorithm(reordered, _madb(algorithm), _mmdb(formulation))
            assert a == b


def _precludes_only_query(form_local: str, alg_local: str) -> str:
    return f"""
PREFIX madb: <https://mardi4nfdi.de/mathalgodb/0.1#>
PREFIX mmdb: <https://mardi4nfdi.de/mathmoddb#>
SELECT ?alg
WHERE {{
  ?alg a madb:Algorithm .
  FILTER ( CONTAINS(STR(?alg), "#{alg_local}") )
  FILTER (
    NOT EXISTS {{
      ?alg madb:precludes ?precForm .
      FILTER (
        NOT EXISTS {{
          ?precForm ?a ?b .
          FILTER (CONTAINS(STR(?a), STR(mmdb:)))
          FILTER (
            NOT EXISTS {{
              mmdb:{form_local} ?a ?b .
            }})}})}})}}
"""


def test_precludes_equivalence_exhaustive(seed):
    """Engine NOT EXISTS outcome equals recommender precludes logic for every pair."""
    reg = schema()
    algorithms = seed.subjects_of_type(reg.class_named("Algorithm").iri)
    formulations = seed.subjects_of_type(reg.class_named("MathematicalFormulation").iri)
    assert len(algorithms) == 10 and len(formulations) == 19
    for algorithm in algorithms:
        for formulation in formulations:
            verdict = classify_algorithm(seed, algorithm, formulation)
            excluded_by_precludes = any(
                r.relation == "precludes" and r.matched for r in verdict.reasons
            )
            query = _precludes_only_query(
                formulation.value.rsplit("#", 1)[-1], algorithm.value.rsplit("#", 1)[-1]
            )
            rows = evaluate(seed, parse_query(query)).rows
            query_keeps = len(rows) == 1
            assert query_keeps != excluded_by_precludes, (algorithm, formulation)


def test_recommend_agrees_with_reference_query(seed, fruit_query_text):
    """Non-excluded (task, form, alg) triples equal the query's row set."""
    rows = evaluate(seed, parse_query(fruit_query_text)).rows
    query_triples = {(r[1], r[3], r[4]) for r in rows}
    rec_triples = set()
    for rec in recommend(seed, _mmdb("GravitationalEffectsOnFruit")):
        for verdict in rec.verdicts:
            rec_triples.add((rec.task, rec.formulation, verdict.algorithm))
    assert rec_triples == query_triples


def test_requires_stripped_recommend_equals_verbatim_query(seed, fruit_query_text):
    """Without requires edges the recommender reduces to the query's precludes filter."""
    from mathkg.schema import REQUIRES

    stripped = seed.copy()
    for t in list(stripped.triples_matching(predicate=REQUIRES)):
        stripped.remove(t)
    rows = evaluate(stripped, parse_query(fruit_query_text)).rows
    query_triples = {(r[1], r[3], r[4]) for r in rows}
    rec_triples = set()
    for rec in recommend(stripped, _mmdb("GravitationalEffectsOnFruit")):
        for verdict in rec.verdicts:
            rec_triples.add((rec.task, rec.formulation, verdict.algorithm))
    assert rec_triples == query_triples
