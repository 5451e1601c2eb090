// DOM wiring. Everything below reads state, calls the API client and
// writes innerHTML produced by the pure renderers in render.ts.

import { ApiClient, ApiError, ConnectionError } from "./api.js";
import {
  clearOverrides,
  initialState,
  recommendBody,
  toggleAddition,
  toggleRemoval,
  type ViewState,
} from "./state.js";
import {
  renderClassOptions,
  renderConnectionBanner,
  renderEntityDetail,
  renderEntityList,
  renderOverrideChips,
  renderQueryError,
  renderResultTable,
  renderVerdictPanel,
} from "./render.js";
import { LatestWins } from "./whatif.js";
import type { QueryError, RecommendationJson } from "./types.js";

const api = new ApiClient("");
let state: ViewState = initialState();
const recommendSequencer = new LatestWins<RecommendationJson | null>();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showBanner(message: string | null): void {
  el("banner-slot").innerHTML = message ? renderConnectionBanner(message) : "";
}

async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    const value = await work();
    showBanner(null);
    return value;
  } catch (error) {
    if (error instanceof ConnectionError) {
      showBanner(error.message);
    } else if (error instanceof ApiError) {
      showBanner(`service error: ${error.message}`);
    } else {
      throw error;
    }
    return undefined;
  }
}

// -- entity browser ----------------------------------------------------------

async function refreshBrowser(): Promise<void> {
  await guard(async () => {
    const page = await api.entities({
      classFilter: state.classFilter,
      q: state.searchText,
      page: state.page,
      pageSize: 25,
    });
    el("entity-list").innerHTML = renderEntityList(page);
  });
}

async function openEntity(iri: string): Promise<void> {
  state = { ...state, selectedEntity: iri };
  await guard(async () => {
    const detail = await api.entity(iri);
    el("entity-detail").innerHTML = renderEntityDetail(detail);
  });
}

// -- query console -----------------------------------------------------------

async function runQuery(): Promise<void> {
  const text = (el<HTMLTextAreaElement>("query-input")).value;
  state = { ...state, queryDraft: text };
  if (!text.trim()) {
    el("query-output").innerHTML = `<p class="warning">Enter a query first.</p>`;
    return;
  }
  try {
    const result = await api.query(text);
    el("query-output").innerHTML = renderResultTable(result);
    showBanner(null);
  } catch (error) {
    if (error instanceof ApiError && error.detail && typeof error.detail === "object") {
      const payload = error.detail as QueryError;
      if (payload.error && typeof payload.error.line === "number") {
        el("query-output").innerHTML = renderQueryError(
          payload.error.message,
          payload.error.line,
          payload.error.column,
        );
        return;
      }
    }
    if (error instanceof ConnectionError) {
      showBanner(error.message);
      return;
    }
    throw error;
  }
}

async function downloadCsv(): Promise<void> {
  const text = (el<HTMLTextAreaElement>("query-input")).value;
  await guard(async () => {
    // the server's CSV serializer is the single source of truth
    const csv = await api.queryCsv(text);
    const blob = new Blob([csv], { type: "text/csv" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "results.csv";
    link.click();
    URL.revokeObjectURL(link.href);
  });
}

// -- what-if panel -------------------------------------------------------------

async function refreshWhatIf(): Promise<void> {
  el<HTMLInputElement>("whatif-task").value = state.whatIf.task;
  el<HTMLInputElement>("whatif-formulation").value = state.whatIf.formulation;
  await guard(async () => {
    const rec = await recommendSequencer.issue(async () => {
      const response = await api.recommend(recommendBody(state));
      return response.recommendations[0] ?? null;
    });
    if (rec === null) return; // stale response or nothing to show
    el("whatif-panel").innerHTML = renderVerdictPanel(rec);
    const detail = await api.entity(state.whatIf.formulation);
    const stored = detail.outgoing
      .filter(
        (o) =>
          o.object.kind === "literal" &&
          o.predicateQname.startsWith("mmdb:") &&
          !["mmdb:definingFormulation", "mmdb:symbol", "mmdb:tensorOrder"].includes(
            o.predicateQname,
          ) &&
          !o.predicateQname.endsWith("Id"),
      )
      .map((o) => ({
        predicate: o.predicateQname,
        value: o.object.kind === "literal" ? o.object.value : "",
      }));
    el("whatif-chips").innerHTML = renderOverrideChips(
      stored,
      state.whatIf.removed,
      state.whatIf.added,
    );
  });
}

function chipValue(raw: string): boolean | number | string {
  if (raw === "true") return true;
  if (raw === "false") return false;
  if (/^-?\d+$/.test(raw)) return Number(raw);
  return raw;
}

function onChipClick(target: HTMLElement): void {
  const predicate = target.dataset.predicate;
  const raw = target.dataset.value;
  if (!predicate || raw === undefined) return;
  const pair = { predicate, value: chipValue(raw) };
  state =
    target.dataset.kind === "added"
      ? toggleAddition(state, pair)
      : toggleRemoval(state, pair);
  void refreshWhatIf();
}

// -- wiring --------------------------------------------------------------------

export function start(): void {
  void guard(async () => {
    const classes = await api.classes();
    el("class-filter").innerHTML = renderClassOptions(classes, state.classFilter);
  }).then(refreshBrowser);

  el<HTMLSelectElement>("class-filter").addEventListener("change", (event) => {
    state = { ...state, classFilter: (event.target as HTMLSelectElement).value, page: 1 };
    void refreshBrowser();
  });
  el<HTMLInputElement>("search-box").addEventListener("input", (event) => {
    state = { ...state, searchText: (event.target as HTMLInputElement).value, page: 1 };
    void refreshBrowser();
  });
  document.body.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("entity-link") && target.dataset.iri) {
      event.preventDefault();
      void openEntity(target.dataset.iri);
    }
    if (target.classList.contains("chip")) {
      onChipClick(target);
    }
  });
  el<HTMLTextAreaElement>("query-input").value = state.queryDraft;
  el("run-query").addEventListener("click", () => void runQuery());
  el("download-csv").addEventListener("click", () => void downloadCsv());
  el("whatif-refresh").addEventListener("click", () => {
    state = {
      ...state,
      whatIf: {
        ...state.whatIf,
        task: el<HTMLInputElement>("whatif-task").value,
        formulation: el<HTMLInputElement>("whatif-formulation").value,
      },
    };
    void refreshWhatIf();
  });
  el("whatif-reset").addEventListener("click", () => {
    state = clearOverrides(state);
    void refreshWhatIf();
  });
  el("whatif-add").addEventListener("click", () => {
    const predicate = el<HTMLInputElement>("whatif-new-predicate").value.trim();
    const raw = el<HTMLInputElement>("whatif-new-value").value.trim();
    if (!predicate) return;
    // open vocabulary: whatever the user typed goes out verbatim
    state = toggleAddition(state, { predicate, value: chipValue(raw || "true") });
    void refreshWhatIf();
  });
  void refreshWhatIf();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  start();
}
