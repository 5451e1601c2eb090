"""Command-line entry point.

Exit codes are the machine contract: 0 success, 1 validation errors found,
2 usage errors, 3 parse errors in data, query or template files.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from mathkg.dataio import load_directory, persist_directory
from mathkg.errors import (
    MathKgError,
    ParseError,
    UnknownPrefix,
)
from mathkg.ingest import draft_to_triples, merge, parse_template
from mathkg.model import DEFAULT_PREFIXES, Iri, expand_prefix
from mathkg.recommend import recommend, recommendation_table
from mathkg.seed import entity_counts
from mathkg.sparql import evaluate, format_results, parse_query
from mathkg.store import Graph
from mathkg.turtle import serialize
from mathkg.validate import repair_inverses, validate

_FORMATS = {"table": "aligned-text", "csv": "csv", "json": "json-rows"}

_data_option = click.option(
    "--data",
    "data_dir",
    envvar="MATHKG_DATA",
    required=True,
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    help="Directory of .ttl files (env: MATHKG_DATA).",
)


def _load(data_dir: Path) -> Graph:
    try:
        return load_directory(data_dir)
    except FileNotFoundError as exc:
        click.echo(f"error: {exc}", err=True)
        raise click.exceptions.Exit(2)
    except ParseError as exc:
        _report(exc)
        raise click.exceptions.Exit(3)


def _report(exc: ParseError) -> None:
    click.echo(f"parse error: {exc}", err=True)


def _resolve_iri(value: str, graph: Graph) -> Iri:
    if "://" in value:
        return Iri(value)
    prefixes = dict(DEFAULT_PREFIXES)
    prefixes.update(graph.prefixes)
    return expand_prefix(value, prefixes)


@click.group()
@click.version_option(package_name="mathkg")
def main() -> None:
    """Knowledge-graph engine for mathematical models and algorithms."""


@main.command()
@_data_option
def load(data_dir: Path) -> None:
    """Parse the dataset and print entity/triple counts."""
    graph = _load(data_dir)
    counts = entity_counts(graph)
    for name, count in counts.items():
        click.echo(f"{name:24} {count}")
    click.echo(f"{'triples':24} {len(graph)}")


@main.command("validate")
@_data_option
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def validate_cmd(data_dir: Path, as_json: bool) -> None:
    """Check the dataset; exit 1 when errors (not warnings) are found."""
    graph = _load(data_dir)
    report = validate(graph)
    click.echo(report.as_json() if as_json else report.as_text(graph.prefixes), nl=False)
    if report.error_count:
        raise click.exceptions.Exit(1)


@main.command()
@_data_option
@click.option("--file", "query_file", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(sorted(_FORMATS)), default="table")
def query(data_dir: Path, query_file: Path, fmt: str) -> None:
    """Run a query file against the dataset and print the results."""
    graph = _load(data_dir)
    try:
        parsed = parse_query(query_file.read_text(encoding="utf-8"))
    except ParseError as exc:
        _report(exc)
        raise click.exceptions.Exit(3)
    table = evaluate(graph, parsed)
    for warning in table.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(format_results(table, _FORMATS[fmt]), nl=False)


@main.command("recommend")
@_data_option
@click.option("--problem", required=True, help="Research problem IRI or prefixed name.")
@click.option("--json", "as_json", is_flag=True, help="Emit recommendations as JSON.")
def recommend_cmd(data_dir: Path, problem: str, as_json: bool) -> None:
    """Rank algorithms for every task/formulation of a research problem."""
    graph = _load(data_dir)
    try:
        iri = _resolve_iri(problem, graph)
        recommendations = recommend(graph, iri)
    except (UnknownPrefix, MathKgError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        raise click.exceptions.Exit(2)
    if not recommendations:
        click.echo("warning: research problem has no models", err=True)
    if as_json:
        click.echo(json.dumps([r.as_dict() for r in recommendations], indent=2))
    else:
        click.echo(recommendation_table(recommendations, graph.prefixes), nl=False)


@main.command("ingest")
@_data_option
@click.option("--template", "template_file", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--strict", is_flag=True, help="Reject conflicting functional properties.")
@click.option("--write", is_flag=True, help="Persist the merged graph back to the data directory.")
def ingest_cmd(data_dir: Path, template_file: Path, strict: bool, write: bool) -> None:
    """Merge a documentation template into the dataset."""
    graph = _load(data_dir)
    try:
        draft = parse_template(template_file.read_text(encoding="utf-8"), template_file.name)
        triples = draft_to_triples(draft, graph)
    except MathKgError as exc:
        click.echo(f"template error: {exc}", err=True)
        raise click.exceptions.Exit(3)
    merged, report = merge(graph, triples, "strict" if strict else "additive")
    merged = repair_inverses(merged)
    for warning in draft.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(report.as_json())
    if write:
        persist_directory(merged, data_dir)


@main.command()
@_data_option
@click.option("--out", "out_file", required=True, type=click.Path(dir_okay=False, path_type=Path))
def export(data_dir: Path, out_file: Path) -> None:
    """Serialize the whole dataset into a single file."""
    graph = _load(data_dir)
    out_file.write_text(serialize(graph), encoding="utf-8")
    click.echo(f"wrote {len(graph)} triples to {out_file}")


@main.command()
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSON config file; flags override its values.")
@click.option("--data", "data_dir", envvar="MATHKG_DATA",
              type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--read-only", is_flag=True, default=None)
def serve(config_file: Path | None, data_dir: Path | None, host: str | None,
          port: int | None, read_only: bool | None) -> None:
    """Serve the HTTP API."""
    import uvicorn

    from mathkg.service import ServiceConfig, create_app

    settings: dict = {}
    if config_file is not None:
        settings = json.loads(config_file.read_text(encoding="utf-8"))
    if data_dir is not None:
        settings["dataPath"] = str(data_dir)
    if host is not None or port is not None:
        current = settings.get("bindAddress", "127.0.0.1:8080")
        default_host, _, default_port = current.partition(":")
        settings["bindAddress"] = f"{host or default_host}:{port or default_port}"
    if read_only:
        settings["readOnly"] = True
    if "dataPath" not in settings:
        click.echo("error: no data directory configured", err=True)
        raise click.exceptions.Exit(2)
    config = ServiceConfig.from_dict(settings)
    try:
        app = create_app(config)
    except FileNotFoundError as exc:
        click.echo(f"error: {exc}", err=True)
        raise click.exceptions.Exit(2)
    except ParseError as exc:
        _report(exc)
        raise click.exceptions.Exit(3)
    bind_host, _, bind_port = config.bind_address.partition(":")
    uvicorn.run(app, host=bind_host, port=int(bind_port))


if __name__ == "__main__":
    sys.exit(main())
