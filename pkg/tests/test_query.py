from __future__ import annotations

import pytest

from conftest import FRUIT_ROWS
from mathkg.errors import ParseError, UnsupportedFeature
from mathkg.model import MMDB, Iri, Literal, local_name
from mathkg.sparql import (
    Contains,
    NotExists,
    ResultTable,
    evaluate,
    format_results,
    parse_query,
)
from mathkg.store import Graph, Triple, Var

PREFIX_BLOCK = "PREFIX mmdb: <https://mardi4nfdi.de/mathmoddb#>\n"


def test_reference_query_structure(fruit_query_text):
    query = parse_query(fruit_query_text)
    assert [v.name for v in query.projection] == ["mod", "task", "prob", "form", "alg"]
    assert len(query.where.patterns) == 5
    assert len(query.where.filters) == 1
    level1 = query.where.filters[0]
    assert isinstance(level1, NotExists)
    assert len(level1.group.patterns) == 1
    [level2] = level1.group.filters
    assert isinstance(level2, NotExists)
    contains, level3 = level2.group.filters
    assert isinstance(contains, Contains)
    assert isinstance(level3, NotExists)
    assert level3.group.patterns[0].subject == Var("form")


def test_single_pattern_query():
    query = parse_query(PREFIX_BLOCK + "SELECT ?x WHERE { ?x a mmdb:ResearchField . }")
    assert len(query.where.patterns) == 1
    assert query.projection == (Var("x"),)


def test_incomplete_triple_is_parse_error():
    with pytest.raises(ParseError):
        parse_query(PREFIX_BLOCK + "SELECT ?x WHERE { ?x }")


def test_keywords_are_case_insensitive():
    query = parse_query(PREFIX_BLOCK + "select ?x where { ?x a mmdb:Quantity }")
    assert query.projection == (Var("x"),)


def test_unknown_prefix_in_query():
    with pytest.raises(ParseError) as err:
        parse_query("SELECT ?x WHERE { ?x nope:p ?y . }")
    assert err.value.kind == "prefix"


def test_projected_variable_must_occur_in_where():
    with pytest.raises(ParseError):
        parse_query(PREFIX_BLOCK + "SELECT ?ghost WHERE { ?x a mmdb:Quantity . }")


@pytest.mark.parametrize("fragment", [
    "SELECT ?x WHERE { ?x a ?c . OPTIONAL { ?x ?p ?o } }",
    "SELECT ?x WHERE { { ?x a ?c } UNION { ?x ?p ?o } }",
    "SELECT ?x WHERE { ?x a ?c } ORDER BY ?x",
    "SELECT DISTINCT ?x WHERE { ?x a ?c }",
    "SELECT ?x WHERE { ?x a ?c } LIMIT 5",
])
def test_unsupported_sparql_is_flagged(fragment):
    with pytest.raises(UnsupportedFeature) as err:
        parse_query(fragment)
    assert "subset" in err.value.message


def test_reference_query_returns_the_four_expected_rows(seed, fruit_query_text):
    table = evaluate(seed, parse_query(fruit_query_text))
    assert table.header == ("mod", "task", "prob", "form", "alg")
    rows = {tuple(local_name(term) for term in row) for row in table.rows}
    assert rows == FRUIT_ROWS
    assert len(table.rows) == 4


def test_any_query_on_empty_graph_is_empty(fruit_query_text):
    table = evaluate(Graph(), parse_query(fruit_query_text))
    assert table.rows == ()


def test_evaluation_is_deterministic(seed, fruit_query_text):
    query = parse_query(fruit_query_text)
    assert evaluate(seed, query) == evaluate(seed, query)


def test_duplicate_solutions_are_eliminated():
    g = Graph()
    g.insert(Triple(Iri(MMDB + "s"), Iri(MMDB + "p"), Iri(MMDB + "a")))
    g.insert(Triple(Iri(MMDB + "s"), Iri(MMDB + "p"), Iri(MMDB + "b")))
    # ?x projects only the subject; both matches collapse to one row
    table = evaluate(g, parse_query(PREFIX_BLOCK + "SELECT ?x WHERE { ?x mmdb:p ?o . }"))
    assert len(table.rows) == 1


def test_correlated_not_exists():
    g = Graph()
    g.insert(Triple(Iri(MMDB + "a"), Iri(MMDB + "p"), Iri(MMDB + "b")))
    g.insert(Triple(Iri(MMDB + "b"), Iri(MMDB + "q"), Iri(MMDB + "c")))
    g.insert(Triple(Iri(MMDB + "d"), Iri(MMDB + "p"), Iri(MMDB + "e")))
    query = parse_query(
        PREFIX_BLOCK
        + "SELECT ?x WHERE { ?x mmdb:p ?y . FILTER ( NOT EXISTS { ?y mmdb:q ?z . } ) }"
    )
    rows = evaluate(g, query).rows
    assert [local_name(r[0]) for r in rows] == ["d"]


def test_contains_and_str_semantics():
    g = Graph()
    g.insert(Triple(Iri(MMDB + "Widget"), Iri(MMDB + "p"), Literal("42", "integer")))
    g.insert(Triple(Iri(MMDB + "Gadget"), Iri(MMDB + "p"), Literal("7", "integer")))
    query = parse_query(
        PREFIX_BLOCK
        + 'SELECT ?x WHERE { ?x mmdb:p ?v . FILTER ( CONTAINS(STR(?x), "Wid") ) }'
    )
    rows = evaluate(g, query).rows
    assert [local_name(r[0]) for r in rows] == ["Widget"]


def test_unbound_projection_becomes_warning_column():
    g = Graph()
    g.insert(Triple(Iri(MMDB + "a"), Iri(MMDB + "p"), Iri(MMDB + "b")))
    query = parse_query(
        PREFIX_BLOCK
        + "SELECT ?x ?z WHERE { ?x mmdb:p ?y . FILTER ( NOT EXISTS { ?y mmdb:q ?z . } ) }"
    )
    table = evaluate(g, query)
    assert table.rows == ((Iri(MMDB + "a"), None),)
    assert any("?z" in w for w in table.warnings)


def test_adding_not_exists_match_only_removes_rows(seed, fruit_query_text):
    query = parse_query(fruit_query_text)
    before = set(evaluate(seed, query).rows)
    poisoned = seed.copy()
    # make the vacuum equation stiff: the precludes body now matches more
    poisoned.insert(
        Triple(Iri(MMDB + "FreeFallEquationVacuum"), Iri(MMDB + "isStiff"),
               Literal("true", "boolean"))
    )
    after = set(evaluate(poisoned, query).rows)
    assert after <= before
    # only RKim11 precludes nothing, so it alone survives on both models
    assert {local_name(row[4]) for row in after} == {"RKim11"}
    assert len(after) == 2


def test_csv_header_and_rows(seed, fruit_query_text):
    table = evaluate(seed, parse_query(fruit_query_text))
    csv_text = format_results(table, "csv")
    lines = csv_text.split("\r\n")
    assert lines[0] == "mod,task,prob,form,alg"
    assert len([l for l in lines if l]) == 5


def test_csv_quoting_is_rfc4180():
    table = ResultTable(
        header=("a",),
        rows=((Literal('say "hi", ok'),), (Literal("line\nbreak"),)),
    )
    out = format_results(table, "csv")
    assert '"say ""hi"", ok"' in out
    assert '"line\nbreak"' in out


def test_empty_table_is_header_only_csv():
    table = ResultTable(header=("a", "b"), rows=())
    assert format_results(table, "csv") == "a,b\r\n"


def test_json_rows_shape(seed, fruit_query_text):
    import json

    table = evaluate(seed, parse_query(fruit_query_text))
    payload = json.loads(format_results(table, "json-rows"))
    assert payload["header"] == ["mod", "task", "prob", "form", "alg"]
    assert len(payload["rows"]) == 4
    assert payload["rows"][0][4] == "madb:RKim11"


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        format_results(ResultTable(("x",), ()), "yaml")
