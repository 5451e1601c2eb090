from __future__ import annotations

from hypothesis import given

import strategies as stg
from mathkg.model import MADB, MMDB, Iri, Literal, Triple
from mathkg.schema import RDF_TYPE
from mathkg.store import Graph, TriplePattern, Var


def _graph(triples) -> Graph:
    g = Graph()
    for t in triples:
        g.insert(t)
    return g


def test_insert_is_idempotent():
    t = Triple(Iri(MMDB + "Pomology"), Iri(MMDB + "containsProblem"),
               Iri(MMDB + "GravitationalEffectsOnFruit"))
    g = Graph()
    assert g.insert(t)
    assert not g.insert(t)
    assert len(g) == 1


def test_insert_then_match_finds_the_edge():
    t = Triple(Iri(MMDB + "Pomology"), Iri(MMDB + "containsProblem"),
               Iri(MMDB + "GravitationalEffectsOnFruit"))
    g = _graph([t])
    bindings = g.match(TriplePattern(Var("s"), t.predicate, t.object))
    assert bindings == [{"s": t.subject}]


def test_literal_object_round_trips_verbatim():
    latex = Literal(r"\dot{v}=g", "latex-expression")
    t = Triple(Iri(MMDB + "FreeFallEquationVacuum"), Iri(MMDB + "definingFormulation"), latex)
    g = _graph([t])
    [binding] = g.match(TriplePattern(t.subject, t.predicate, Var("o")))
    assert binding["o"] is latex


def test_match_on_seed_models(seed):
    pattern = TriplePattern(Var("s"), RDF_TYPE, Iri(MMDB + "MathematicalModel"))
    found = {b["s"].value.rsplit("#", 1)[-1] for b in seed.match(pattern)}
    assert {"FreeFallModelVacuum", "FreeFallModelAirDrag"} <= found


def test_fully_bound_pattern():
    t = Triple(Iri(MMDB + "a"), Iri(MMDB + "p"), Iri(MMDB + "b"))
    g = _graph([t])
    assert g.match(TriplePattern(t.subject, t.predicate, t.object)) == [{}]
    assert g.match(TriplePattern(t.subject, t.predicate, Iri(MMDB + "c"))) == []


def test_repeated_variable_must_bind_consistently():
    loop = Triple(Iri(MMDB + "n"), Iri(MMDB + "p"), Iri(MMDB + "n"))
    other = Triple(Iri(MMDB + "n"), Iri(MMDB + "p"), Iri(MMDB + "m"))
    g = _graph([loop, other])
    bindings = g.match(TriplePattern(Var("x"), Iri(MMDB + "p"), Var("x")))
    assert bindings == [{"x": Iri(MMDB + "n")}]


def test_literal_subject_pattern_matches_nothing():
    g = _graph([Triple(Iri(MMDB + "a"), Iri(MMDB + "p"), Literal("x"))])
    assert g.match(TriplePattern(Literal("x"), Var("p"), Var("o"))) == []


@given(stg.triple_lists())
def test_match_equals_linear_scan(triples):
    g = _graph(triples)
    pattern = TriplePattern(Var("s"), Iri(stg.NAMESPACES[0] + "p"), Var("o"))
    via_index = {(b["s"], b["o"]) for b in g.match(pattern)}
    via_scan = {
        (t.subject, t.object) for t in set(triples) if t.predicate == pattern.predicate
    }
    assert via_index == via_scan


@given(stg.triple_lists())
def test_bound_predicate_count_equals_scan(triples):
    g = _graph(triples)
    predicate = Iri(stg.NAMESPACES[0] + "q")
    assert len(g.triples_matching(predicate=predicate)) == sum(
        1 for t in set(triples) if t.predicate == predicate
    )


@given(stg.triple_lists())
def test_indexes_agree_on_triple_set(triples):
    g = _graph(triples)
    subjects = {t.subject for t in set(triples)}
    via_spo = {t for s in subjects for t in g.triples_matching(subject=s)}
    predicates = {t.predicate for t in set(triples)}
    via_pos = {t for p in predicates for t in g.triples_matching(predicate=p)}
    objects = {t.object for t in set(triples)}
    via_osp = {t for o in objects for t in g.triples_matching(object=o)}
    assert via_spo == via_pos == via_osp == set(triples)
    assert len(g) == len(set(triples))


@given(stg.triple_lists(max_size=15), stg.triples())
def test_remove_undoes_insert(triples, extra):
    g = _graph(triples)
    before = set(g)
    if extra in before:
        return
    g.insert(extra)
    assert g.remove(extra)
    assert set(g) == before
    assert not g.remove(extra)


def test_match_order_is_deterministic(seed):
    pattern = TriplePattern(Var("s"), RDF_TYPE, Var("c"))
    assert seed.match(pattern) == seed.match(pattern)


def test_properties_of_namespace_filter(seed):
    props = seed.properties_of(Iri(MMDB + "FreeFallEquationAirDrag"), MMDB)
    assert (Iri(MMDB + "isStiff"), Literal("true", "boolean")) in props
    # rdf:type drops out solely because it is outside the namespace
    assert all(p.value.startswith(MMDB) for p, _ in props)


def test_properties_of_fresh_iri_is_empty(seed):
    assert seed.properties_of(Iri(MMDB + "NoSuchEntity"), MMDB) == frozenset()


@given(stg.triple_lists())
def test_properties_of_equals_brute_filter(triples):
    g = _graph(triples)
    subject = Iri(stg.NAMESPACES[0] + "x")
    ns = stg.NAMESPACES[0]
    expected = {
        (t.predicate, t.object)
        for t in set(triples)
        if t.subject == subject and t.predicate.value.startswith(ns)
    }
    assert g.properties_of(subject, ns) == expected


def test_copy_is_independent():
    t = Triple(Iri(MMDB + "a"), Iri(MMDB + "p"), Iri(MMDB + "b"))
    g = _graph([t])
    clone = g.copy()
    clone.insert(Triple(Iri(MMDB + "c"), Iri(MMDB + "p"), Iri(MMDB + "d")))
    assert len(g) == 1 and len(clone) == 2


def test_mentions_covers_all_positions():
    t = Triple(Iri(MMDB + "s"), Iri(MADB + "p"), Iri(MMDB + "o"))
    g = _graph([t])
    assert g.mentions(Iri(MMDB + "s"))
    assert g.mentions(Iri(MADB + "p"))
    assert g.mentions(Iri(MMDB + "o"))
    assert not g.mentions(Iri(MMDB + "absent"))
