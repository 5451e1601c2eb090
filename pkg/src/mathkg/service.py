"""HTTP facade over the graph: browsing, query, recommendation, ingestion.

Read endpoints never mutate state. Ingestion runs behind a single-writer
lock and swaps the graph reference atomically, so concurrent readers see
either the pre- or the post-ingest snapshot, never a partial one. On a
successful ingest the dataset directory is rewritten from the new graph.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from mathkg.dataio import load_directory, persist_directory
from mathkg.errors import (
    MathKgError,
    ParseError,
    UnknownPrefix,
    UnsupportedFeature,
)
from mathkg.ingest import draft_to_triples, merge, parse_template
from mathkg.model import (
    BOOLEAN,
    DECIMAL,
    INTEGER,
    STRING,
    Iri,
    Literal,
    Term,
    compact_iri,
    expand_prefix,
)
from mathkg.recommend import (
    Recommendation,
    recommend,
    recommend_for_task,
)
from mathkg.schema import RDFS_LABEL, schema
from mathkg.sparql import evaluate, format_results, parse_query
from mathkg.store import Graph
from mathkg.validate import repair_inverses, validate


@dataclass
class ServiceConfig:
    bind_address: str = "127.0.0.1:8080"
    data_path: Path = Path("data")
    read_only: bool = False
    cors_allowed_origins: list[str] = dataclass_field(default_factory=list)
    ui_path: Path | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ServiceConfig":
        return cls(
            bind_address=raw.get("bindAddress", "127.0.0.1:8080"),
            data_path=Path(raw["dataPath"]),
            read_only=bool(raw.get("readOnly", False)),
            cors_allowed_origins=list(raw.get("corsAllowedOrigins", [])),
            ui_path=Path(raw["uiPath"]) if raw.get("uiPath") else None,
        )


class _GraphHolder:
    """Reference cell for the current graph snapshot."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.write_lock = threading.Lock()


def _term_json(term: Term, prefixes: dict[str, str]) -> dict:
    if isinstance(term, Iri):
        return {"kind": "iri", "iri": term.value, "qname": compact_iri(term, prefixes)}
    out = {"kind": "literal", "value": term.lexical, "datatype": term.datatype}
    if term.lang:
        out["lang"] = term.lang
    return out


def _label_of(graph: Graph, iri: Iri) -> str | None:
    labels = [o.lexical for o in graph.objects(iri, RDFS_LABEL) if isinstance(o, Literal)]
    return labels[0] if labels else None


def _json_to_pair(graph: Graph, entry: dict) -> tuple[Iri, Term]:
    predicate = _parse_iri(entry["predicate"], graph)
    value = entry["value"]
    if isinstance(value, bool):
        term: Term = Literal("true" if value else "false", BOOLEAN)
    elif isinstance(value, int):
        term = Literal(str(value), INTEGER)
    elif isinstance(value, float):
        lexical = repr(value)
        term = Literal(lexical if "." in lexical else lexical + ".0", DECIMAL)
    elif isinstance(value, dict):
        term = Literal(value["lexical"], value.get("datatype", STRING))
    elif isinstance(value, str) and "://" in value:
        term = Iri(value)
    else:
        term = Literal(str(value), STRING)
    return (predicate, term)


def _parse_iri(value: str, graph: Graph) -> Iri:
    if "://" in value:
        return Iri(value)
    return expand_prefix(value, graph.prefixes)


def _recommendation_json(rec: Recommendation, prefixes: dict[str, str]) -> dict:
    def verdict(v):
        return {
            "algorithm": v.algorithm.value,
            "algorithmQname": compact_iri(v.algorithm, prefixes),
            "status": v.status,
            "reasons": [
                {
                    "relation": r.relation,
                    "pattern": r.pattern.value,
                    "patternQname": compact_iri(r.pattern, prefixes),
                    "matched": r.matched,
                }
                for r in v.reasons
            ],
        }

    return {
        "task": rec.task.value,
        "taskQname": compact_iri(rec.task, prefixes),
        "formulation": rec.formulation.value,
        "formulationQname": compact_iri(rec.formulation, prefixes),
        "verdicts": [verdict(v) for v in rec.verdicts],
        "excluded": [verdict(v) for v in rec.excluded],
    }


def create_app(config: ServiceConfig) -> FastAPI:
    holder = _GraphHolder(load_directory(config.data_path))
    app = FastAPI(title="mathkg", version="0.1.0")
    app.state.config = config
    app.state.holder = holder

    if config.cors_allowed_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_allowed_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    def bad_request(exc: ParseError, status: int = 400) -> JSONResponse:
        return JSONResponse({"error": exc.as_dict()}, status_code=status)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "triples": len(holder.graph)}

    @app.get("/api/classes")
    def classes() -> list[dict]:
        graph = holder.graph
        return [
            {
                "name": c.name,
                "iri": c.iri.value,
                "qname": compact_iri(c.iri, graph.prefixes),
                "count": len(graph.subjects_of_type(c.iri)),
            }
            for c in schema().classes
        ]

    @app.get("/api/entities")
    def entities(
        request: Request,
        q: str = "",
        page: int = 1,
        pageSize: int = 50,
    ) -> JSONResponse:
        graph = holder.graph
        class_name = request.query_params.get("class", "")
        reg = schema()
        if class_name:
            try:
                class_iris = [reg.class_named(class_name).iri]
            except KeyError:
                return JSONResponse({"error": f"unknown class {class_name!r}"}, status_code=400)
        else:
            class_iris = [c.iri for c in reg.classes]
        items = []
        needle = q.lower()
        for class_iri in class_iris:
            for subject in graph.subjects_of_type(class_iri):
                label = _label_of(graph, subject)
                if needle and needle not in (label or "").lower():
                    continue
                items.append(
                    {
                        "iri": subject.value,
                        "qname": compact_iri(subject, graph.prefixes),
                        "label": label,
                        "class": class_iri.value.rsplit("#", 1)[-1],
                    }
                )
        items.sort(key=lambda e: e["iri"])
        page = max(page, 1)
        page_size = min(max(pageSize, 1), 500)
        start = (page - 1) * page_size
        return JSONResponse(
            {
                "total": len(items),
                "page": page,
                "pageSize": page_size,
                "items": items[start : start + page_size],
            }
        )

    @app.get("/api/entity/{iri:path}")
    def entity(iri: str) -> JSONResponse:
        graph = holder.graph
        try:
            subject = _parse_iri(iri, graph)
        except (UnknownPrefix, ValueError, MathKgError):
            return JSONResponse({"error": f"not a resolvable IRI: {iri}"}, status_code=404)
        if not graph.mentions(subject):
            return JSONResponse({"error": f"unknown entity {subject.value}"}, status_code=404)
        outgoing = [
            {
                "predicate": t.predicate.value,
                "predicateQname": compact_iri(t.predicate, graph.prefixes),
                "object": _term_json(t.object, graph.prefixes),
            }
            for t in graph.triples_matching(subject=subject)
        ]
        incoming = [
            {
                "subject": t.subject.value,
                "subjectQname": compact_iri(t.subject, graph.prefixes),
                "predicate": t.predicate.value,
                "predicateQname": compact_iri(t.predicate, graph.prefixes),
            }
            for t in graph.triples_matching(object=subject)
        ]
        return JSONResponse(
            {
                "iri": subject.value,
                "qname": compact_iri(subject, graph.prefixes),
                "label": _label_of(graph, subject),
                "types": [t.value for t in graph.types_of(subject)],
                "outgoing": outgoing,
                "incoming": incoming,
            }
        )

    @app.post("/api/query")
    async def query(request: Request) -> Response:
        graph = holder.graph
        body = (await request.body()).decode("utf-8")
        if request.headers.get("content-type", "").startswith("application/json"):
            try:
                body = json.loads(body).get("query", "")
            except (json.JSONDecodeError, AttributeError):
                return JSONResponse({"error": "malformed JSON body"}, status_code=400)
        try:
            parsed = parse_query(body)
        except UnsupportedFeature as exc:
            return bad_request(exc, status=422)
        except ParseError as exc:
            return bad_request(exc)
        table = evaluate(graph, parsed)
        if "text/csv" in request.headers.get("accept", ""):
            return PlainTextResponse(format_results(table, "csv"), media_type="text/csv")
        return JSONResponse(
            json.loads(format_results(table, "json-rows"))
            | {"warnings": list(table.warnings)}
        )

    @app.post("/api/recommend")
    async def recommend_endpoint(request: Request) -> JSONResponse:
        graph = holder.graph
        try:
            payload = json.loads((await request.body()).decode("utf-8") or "{}")
        except json.JSONDecodeError:
            return JSONResponse({"error": "malformed JSON body"}, status_code=400)
        try:
            if "researchProblem" in payload:
                problem = _parse_iri(payload["researchProblem"], graph)
                recs = recommend(graph, problem)
                return JSONResponse(
                    {"recommendations": [_recommendation_json(r, graph.prefixes) for r in recs]}
                )
            if "task" in payload and "formulation" in payload:
                task = _parse_iri(payload["task"], graph)
                formulation = _parse_iri(payload["formulation"], graph)
                overrides = None
                if payload.get("overrides"):
                    raw = payload["overrides"]
                    overrides = (
                        frozenset(_json_to_pair(graph, e) for e in raw.get("add", [])),
                        frozenset(_json_to_pair(graph, e) for e in raw.get("remove", [])),
                    )
                rec = recommend_for_task(graph, task, formulation, overrides)
                return JSONResponse(
                    {"recommendations": [_recommendation_json(rec, graph.prefixes)]}
                )
        except (MathKgError, ValueError, KeyError) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return JSONResponse(
            {"error": "body must name researchProblem or task and formulation"},
            status_code=400,
        )

    @app.post("/api/ingest")
    async def ingest(request: Request, mode: str = "additive") -> JSONResponse:
        if config.read_only:
            return JSONResponse({"error": "service is read-only"}, status_code=403)
        if mode not in ("additive", "strict"):
            return JSONResponse({"error": f"unknown merge mode {mode!r}"}, status_code=400)
        text = (await request.body()).decode("utf-8")
        with holder.write_lock:
            graph = holder.graph
            try:
                draft = parse_template(text, "request")
                triples = draft_to_triples(draft, graph)
            except MathKgError as exc:
                return JSONResponse({"error": str(exc)}, status_code=400)
            merged, report = merge(graph, triples, mode)
            repaired = repair_inverses(merged)
            persist_directory(repaired, config.data_path)
            holder.graph = repaired
            payload = report.as_dict()
            payload["repairedInverses"] = len(repaired) - len(merged)
            payload["warnings"] = list(draft.warnings)
        return JSONResponse(payload)

    @app.get("/api/validate")
    def validate_endpoint() -> JSONResponse:
        return JSONResponse(validate(holder.graph).as_dict())

    if config.ui_path is not None and config.ui_path.exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_path, html=True), name="ui")

    return app
