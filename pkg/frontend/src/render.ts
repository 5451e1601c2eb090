// Pure HTML renderers: same payload in, same markup out. All user- and
// server-provided text goes through esc(), nothing else touches the DOM.

import type {
  ClassInfo,
  EntityDetail,
  EntityPage,
  QueryResult,
  RecommendationJson,
  Reason,
  TermJson,
  VerdictJson,
} from "./types.js";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderClassOptions(classes: ClassInfo[], selected: string): string {
  const options = classes
    .map(
      (c) =>
        `<option value="${esc(c.name)}"${c.name === selected ? " selected" : ""}>` +
        `${esc(c.name)} (${c.count})</option>`,
    )
    .join("");
  return `<option value="">all classes</option>${options}`;
}

export function renderEntityList(page: EntityPage): string {
  if (page.items.length === 0) {
    return `<p class="empty">No entities match.</p>`;
  }
  const rows = page.items
    .map(
      (e) =>
        `<li><a href="#" class="entity-link" data-iri="${esc(e.qname)}">` +
        `${esc(e.label ?? e.qname)}</a> <span class="muted">${esc(e.class)}</span></li>`,
    )
    .join("");
  const pages = Math.max(1, Math.ceil(page.total / page.pageSize));
  return (
    `<ul class="entity-list">${rows}</ul>` +
    `<p class="muted">page ${page.page} of ${pages} (${page.total} entities)</p>`
  );
}

function renderTerm(term: TermJson): string {
  if (term.kind === "iri") {
    return `<a href="#" class="entity-link" data-iri="${esc(term.qname)}">${esc(term.qname)}</a>`;
  }
  const tag = term.lang ? `@${term.lang}` : term.datatype === "string" ? "" : `:${term.datatype}`;
  return `<code>${esc(term.value)}</code><span class="muted">${esc(tag)}</span>`;
}

export function renderEntityDetail(detail: EntityDetail): string {
  const outgoing = detail.outgoing
    .map(
      (o) =>
        `<tr><td>${esc(o.predicateQname)}</td><td>${renderTerm(o.object)}</td></tr>`,
    )
    .join("");
  const incoming = detail.incoming
    .map(
      (i) =>
        `<tr><td><a href="#" class="entity-link" data-iri="${esc(i.subjectQname)}">` +
        `${esc(i.subjectQname)}</a></td><td>${esc(i.predicateQname)}</td></tr>`,
    )
    .join("");
  return (
    `<h3>${esc(detail.label ?? detail.qname)}</h3>` +
    `<p class="muted">${esc(detail.qname)}</p>` +
    `<h4>Outgoing</h4><table class="triples"><tbody>${outgoing}</tbody></table>` +
    `<h4>Incoming</h4><table class="triples"><tbody>${incoming}</tbody></table>`
  );
}

export function renderResultTable(result: QueryResult): string {
  const head = result.header.map((h) => `<th>?${esc(h)}</th>`).join("");
  const body = result.rows
    .map((row) => `<tr>${row.map((v) => `<td>${esc(v)}</td>`).join("")}</tr>`)
    .join("");
  const warnings = result.warnings
    .map((w) => `<p class="warning">${esc(w)}</p>`)
    .join("");
  return (
    warnings +
    `<table class="results"><thead><tr>${head}</tr></thead>` +
    `<tbody>${body}</tbody></table>` +
    `<p class="muted">${result.rows.length} row(s)</p>`
  );
}

export function renderQueryError(message: string, line: number, column: number): string {
  return (
    `<p class="error">Parse error at line ${line}, column ${column}: ` +
    `${esc(message)}</p>`
  );
}

function renderReason(reason: Reason): string {
  const mark = reason.matched ? "matched" : "unmatched";
  return `${esc(reason.relation)} ${esc(reason.patternQname)} <em>${mark}</em>`;
}

function renderVerdict(verdict: VerdictJson): string {
  const reasons =
    verdict.reasons.length > 0
      ? `<ul class="reasons">${verdict.reasons
          .map((r) => `<li>${renderReason(r)}</li>`)
          .join("")}</ul>`
      : "";
  return (
    `<li class="verdict verdict-${verdict.status.toLowerCase()}" ` +
    `data-algorithm="${esc(verdict.algorithmQname)}">` +
    `<strong>${esc(verdict.algorithmQname)}</strong>${reasons}</li>`
  );
}

/** Verdicts grouped Recommended / Possible / Excluded, stable order. */
export function renderVerdictPanel(rec: RecommendationJson): string {
  const groups: { title: "Recommended" | "Possible" | "Excluded"; items: VerdictJson[] }[] = [
    { title: "Recommended", items: rec.verdicts.filter((v) => v.status === "Recommended") },
    { title: "Possible", items: rec.verdicts.filter((v) => v.status === "Possible") },
    { title: "Excluded", items: rec.excluded },
  ];
  const sections = groups
    .map(
      (g) =>
        `<section class="verdict-group" data-status="${g.title}">` +
        `<h4>${g.title} (${g.items.length})</h4>` +
        `<ul>${g.items.map(renderVerdict).join("")}</ul></section>`,
    )
    .join("");
  return (
    `<p class="muted">task ${esc(rec.taskQname)}, formulation ${esc(rec.formulationQname)}</p>` +
    sections
  );
}

export function renderOverrideChips(
  stored: { predicate: string; value: string }[],
  removed: { predicate: string; value: boolean | number | string }[],
  added: { predicate: string; value: boolean | number | string }[],
): string {
  const storedChips = stored
    .map((p) => {
      const off = removed.some(
        (r) => r.predicate === p.predicate && String(r.value) === p.value,
      );
      return (
        `<button class="chip${off ? " chip-off" : ""}" data-kind="stored" ` +
        `data-predicate="${esc(p.predicate)}" data-value="${esc(p.value)}">` +
        `${esc(p.predicate)} = ${esc(p.value)}${off ? " (removed)" : ""}</button>`
      );
    })
    .join("");
  const addedChips = added
    .map(
      (p) =>
        `<button class="chip chip-added" data-kind="added" ` +
        `data-predicate="${esc(p.predicate)}" data-value="${esc(String(p.value))}">` +
        `+ ${esc(p.predicate)} = ${esc(String(p.value))}</button>`,
    )
    .join("");
  return storedChips + addedChips;
}

export function renderConnectionBanner(message: string): string {
  return `<div class="banner">${esc(message)}</div>`;
}
