"""Markdown documentation templates: parsing, triple emission, merging.

The canonical template format, frozen here and documented in the README:

* level-2 headings open sections; one heading per ontology class (singular
  or plural both work) plus ``Properties`` and ``Relations``;
* inside a class section, each blank-line separated bullet group describes
  one entity via ``- key: value`` fields (``id``, ``name``, ``symbol``,
  ``kind``, ``tensor-order``, ``description``, ``qudt``, ``wikidata``,
  ``msc``, ``dfg``, ``physh``);
* a fenced ```` ```latex ```` block directly after a group stores that
  entity's defining expression verbatim;
* ``Properties`` bullets read ``- Entity propertyName: value`` and mint
  open-vocabulary model-namespace properties with inferred literal types;
* ``Relations`` bullets read ``- Subject relationName Object`` using the
  schema's relation names.

Unknown headings are collected as warnings, never errors. Entity IRIs are
minted deterministically: class namespace + CamelCased name, unless an
explicit ``id`` overrides the local part.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from mathkg.errors import EmptyTemplate, UnknownRelation, UnresolvableReference
from mathkg.model import (
    BOOLEAN,
    DECIMAL,
    EXTERNAL_ID,
    INTEGER,
    LATEX,
    MADB,
    MMDB,
    STRING,
    Iri,
    Literal,
    Triple,
)
from mathkg.schema import (
    DEFINING_FORMULATION,
    DFG_ID,
    IS_KIND_OF,
    MSC_ID,
    PHYSH_ID,
    QUDT_ID,
    RDF_TYPE,
    RDFS_COMMENT,
    RDFS_LABEL,
    SYMBOL,
    TENSOR_ORDER,
    WIKIDATA_ID,
    schema,
)
from mathkg.store import Graph

_HEADING_RE = re.compile(r"^##\s+(.*?)\s*$")
_BULLET_RE = re.compile(r"^-\s+(.*?)\s*$")
_FENCE_RE = re.compile(r"^```(\w*)\s*$")

_INTEGER_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_RE = re.compile(r"^[+-]?[0-9]*\.[0-9]+$")

_ID_FIELDS = {"qudt": QUDT_ID, "wikidata": WIKIDATA_ID, "msc": MSC_ID,
              "dfg": DFG_ID, "physh": PHYSH_ID}

# Functional properties: at most one value per entity, so strict merges
# treat a differing incoming value as a conflict.
FUNCTIONAL_PREDICATES = (
    RDFS_LABEL, DEFINING_FORMULATION, QUDT_ID, WIKIDATA_ID, MSC_ID, DFG_ID, PHYSH_ID,
)


def _normalize_heading(text: str) -> str:
    word = re.sub(r"[^a-z]", "", text.lower())
    if word.endswith("ies"):
        word = word[:-3] + "y"
    elif word.endswith("s") and word != "software":
        word = word[:-1]
    return word


def _heading_map() -> dict[str, str]:
    out = {"property": "Properties", "relation": "Relations"}
    for cls in schema().classes:
        out[_normalize_heading(cls.name)] = cls.name
    return out


def camel_case(name: str) -> str:
    words = re.split(r"[^0-9A-Za-z]+", name)
    return "".join(w[0].upper() + w[1:] for w in words if w)


@dataclass
class DraftEntity:
    class_name: str
    fields: dict[str, str] = field(default_factory=dict)
    latex: str | None = None
    line: int = 0

    @property
    def local(self) -> str:
        if "id" in self.fields:
            return self.fields["id"]
        return camel_case(self.fields.get("name", ""))


@dataclass
class TemplateDraft:
    source: str = "<string>"
    entities: list[DraftEntity] = field(default_factory=list)
    properties: list[tuple[str, str, str, int]] = field(default_factory=list)
    relations: list[tuple[str, str, str, int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    sections: dict[str, list[tuple[str, str]]] = field(default_factory=dict)

    @property
    def proposed_iris(self) -> dict[str, Iri]:
        reg = schema()
        out = {}
        for entity in self.entities:
            if entity.local:
                out[entity.local] = Iri(reg.class_named(entity.class_name).namespace + entity.local)
        return out


def parse_template(text: str, source: str = "<string>") -> TemplateDraft:
    draft = TemplateDraft(source=source)
    section: str | None = None
    current: DraftEntity | None = None
    last_entity: DraftEntity | None = None  # fences attach across blank lines
    headings = _heading_map()
    in_fence = False
    fence_lines: list[str] = []
    recognized = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        fence = _FENCE_RE.match(line.strip())
        if in_fence:
            if fence:
                in_fence = False
                if last_entity is not None:
                    last_entity.latex = "\n".join(fence_lines)
            else:
                fence_lines.append(raw)
            continue
        if fence and fence.group(1).lower() in ("latex", "tex", "math"):
            in_fence = True
            fence_lines = []
            continue
        heading = _HEADING_RE.match(line)
        if heading:
            name = headings.get(_normalize_heading(heading.group(1)))
            if name is None:
                draft.warnings.append(
                    f"{source}:{lineno}: unknown section {heading.group(1)!r} ignored"
                )
                section = None
            else:
                recognized = True
                section = name
                draft.sections.setdefault(section, [])
            current = None
            last_entity = None
            continue
        bullet = _BULLET_RE.match(line)
        if bullet is None:
            if not line.strip():
                current = None  # blank line closes the entity group
            continue
        if section is None:
            continue
        body = bullet.group(1)
        if section == "Properties":
            m = re.match(r"^(\S+)\s+(\S+)\s*:\s*(.*)$", body)
            if m:
                draft.properties.append((m.group(1), m.group(2), m.group(3), lineno))
                draft.sections[section].append((f"{m.group(1)} {m.group(2)}", m.group(3)))
            else:
                draft.warnings.append(f"{source}:{lineno}: unreadable property bullet {body!r}")
            continue
        if section == "Relations":
            m = re.match(r"^(\S+)\s+(\S+)\s+(\S+)$", body)
            if m:
                draft.relations.append((m.group(1), m.group(2), m.group(3), lineno))
                draft.sections[section].append((m.group(2), f"{m.group(1)} {m.group(3)}"))
            else:
                draft.warnings.append(f"{source}:{lineno}: unreadable relation bullet {body!r}")
            continue
        m = re.match(r"^([A-Za-z-]+)\s*:\s*(.*)$", body)
        if m is None:
            draft.warnings.append(f"{source}:{lineno}: unreadable field bullet {body!r}")
            continue
        if current is None:
            current = DraftEntity(class_name=section, line=lineno)
            draft.entities.append(current)
            last_entity = current
        key = m.group(1).lower().replace("-", "")
        key = {"tensororder": "tensorOrder"}.get(key, key)
        current.fields[key] = m.group(2)
        draft.sections[section].append((key, m.group(2)))

    if not recognized or (not draft.entities and not draft.properties and not draft.relations):
        raise EmptyTemplate(f"{source}: no recognized template sections")
    return draft


def _typed_literal(raw: str) -> Literal:
    if raw in ("true", "false"):
        return Literal(raw, BOOLEAN)
    if _INTEGER_RE.match(raw):
        return Literal(raw, INTEGER)
    if _DECIMAL_RE.match(raw):
        return Literal(raw, DECIMAL)
    return Literal(raw, STRING)


def draft_to_triples(draft: TemplateDraft, target: Graph | None = None) -> list[Triple]:
    """Deterministic triple emission for a parsed draft.

    References (kind fields, property subjects, relation endpoints) resolve
    against the draft first, then against the target graph.
    """
    reg = schema()
    minted = draft.proposed_iris

    def resolve(ref: str, lineno: int) -> Iri:
        candidates = [ref, camel_case(ref)]
        for candidate in candidates:
            if candidate in minted:
                return minted[candidate]
        if target is not None:
            for candidate in candidates:
                for ns in (MMDB, MADB):
                    iri = Iri(ns + candidate)
                    if target.mentions(iri):
                        return iri
        raise UnresolvableReference(
            f"{draft.source}:{lineno}: {ref!r} is neither defined in the "
            "template nor present in the target graph"
        )

    triples: list[Triple] = []
    for entity in draft.entities:
        if not entity.local:
            raise UnresolvableReference(
                f"{draft.source}:{entity.line}: entity needs an id or a name"
            )
        subject = minted[entity.local]
        cls = reg.class_named(entity.class_name)
        triples.append(Triple(subject, RDF_TYPE, cls.iri))
        label = entity.fields.get("name", entity.local)
        triples.append(Triple(subject, RDFS_LABEL, Literal(label)))
        if "symbol" in entity.fields:
            triples.append(Triple(subject, SYMBOL, Literal(entity.fields["symbol"])))
        if "description" in entity.fields:
            triples.append(Triple(subject, RDFS_COMMENT, Literal(entity.fields["description"])))
        if "tensorOrder" in entity.fields:
            triples.append(Triple(subject, TENSOR_ORDER, Literal(entity.fields["tensorOrder"])))
        for field_name, predicate in _ID_FIELDS.items():
            if field_name in entity.fields:
                triples.append(
                    Triple(subject, predicate, Literal(entity.fields[field_name], EXTERNAL_ID))
                )
        if "kind" in entity.fields:
            triples.append(Triple(subject, IS_KIND_OF, resolve(entity.fields["kind"], entity.line)))
        if entity.latex is not None:
            triples.append(Triple(subject, DEFINING_FORMULATION, Literal(entity.latex, LATEX)))
    for subject_ref, prop, raw, lineno in draft.properties:
        triples.append(
            Triple(resolve(subject_ref, lineno), Iri(MMDB + prop), _typed_literal(raw))
        )
    for subject_ref, relation, object_ref, lineno in draft.relations:
        predicate = reg.relation_by_local_name(relation)
        if predicate is None:
            raise UnknownRelation(
                f"{draft.source}:{lineno}: {relation!r} is not a schema relation"
            )
        triples.append(
            Triple(resolve(subject_ref, lineno), predicate, resolve(object_ref, lineno))
        )
    return triples


@dataclass(frozen=True)
class MergeReport:
    added: int
    skipped: int
    conflicts: tuple[tuple[Iri, Iri, Literal | Iri, Literal | Iri], ...] = ()

    def as_dict(self) -> dict:
        def render(term) -> str:
            return term.value if isinstance(term, Iri) else term.lexical

        return {
            "added": self.added,
            "skipped": self.skipped,
            "conflicts": [
                {
                    "subject": s.value,
                    "predicate": p.value,
                    "existing": render(old),
                    "incoming": render(new),
                }
                for s, p, old, new in self.conflicts
            ],
        }

    def as_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def merge(graph: Graph, triples: list[Triple], mode: str = "additive") -> tuple[Graph, MergeReport]:
    """Merge triples into a copy of the graph.

    Additive mode inserts everything that is not already present. Strict
    mode first looks for functional-property conflicts (label, defining
    expression, external ids); a conflicting subject contributes nothing.
    """
    if mode not in ("additive", "strict"):
        raise ValueError(f"unknown merge mode {mode!r}")
    result = graph.copy()
    conflicts: list[tuple[Iri, Iri, Literal | Iri, Literal | Iri]] = []
    blocked: set[Iri] = set()
    if mode == "strict":
        for t in triples:
            if t.predicate in FUNCTIONAL_PREDICATES:
                for existing in graph.objects(t.subject, t.predicate):
                    if existing != t.object:
                        conflicts.append((t.subject, t.predicate, existing, t.object))
                        blocked.add(t.subject)
    added = skipped = 0
    for t in triples:
        if t.subject in blocked:
            skipped += 1
            continue
        if result.insert(t):
            added += 1
        else:
            skipped += 1
    conflicts.sort(key=lambda c: (c[0].value, c[1].value))
    return result, MergeReport(added, skipped, tuple(conflicts))
