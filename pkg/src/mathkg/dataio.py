"""Loading and persisting dataset directories of .ttl files."""

from __future__ import annotations

from pathlib import Path

from mathkg.errors import ParseError
from mathkg.model import MADB, MMDB
from mathkg.store import Graph
from mathkg.turtle import parse_document, serialize


def load_directory(path: Path) -> Graph:
    """Parse every ``*.ttl`` file in sorted filename order into one graph."""
    graph = Graph()
    files = sorted(path.glob("*.ttl"))
    if not files:
        raise FileNotFoundError(f"no .ttl files in {path}")
    for file in files:
        try:
            triples, prefixes = parse_document(file.read_text(encoding="utf-8"))
        except ParseError as exc:
            raise ParseError(f"{file.name}: {exc.message}", exc.line, exc.column, exc.kind) from exc
        graph.prefixes.update(prefixes)
        for t in triples:
            graph.insert(t)
    return graph


def persist_directory(graph: Graph, path: Path) -> list[str]:
    """Rewrite a dataset directory as the canonical serialization.

    Triples are partitioned by subject namespace into ``mathmoddb.ttl``,
    ``mathalgodb.ttl`` and, for anything else, ``other.ttl``. Stale .ttl
    files from earlier layouts are removed; the directory is owned by the
    engine.
    """
    parts: dict[str, Graph] = {}
    for t in graph:
        if t.subject.value.startswith(MMDB):
            name = "mathmoddb.ttl"
        elif t.subject.value.startswith(MADB):
            name = "mathalgodb.ttl"
        else:
            name = "other.ttl"
        parts.setdefault(name, Graph(graph.prefixes)).insert(t)
    path.mkdir(parents=True, exist_ok=True)
    written = sorted(parts)
    for stale in path.glob("*.ttl"):
        if stale.name not in parts:
            stale.unlink()
    for name in written:
        (path / name).write_text(serialize(parts[name]), encoding="utf-8")
    return written
