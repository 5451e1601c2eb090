// Client-side view state and its pure transitions.
//
// What-if overrides never mutate server data: they travel as an explicit
// `overrides` field of the recommend request and are applied server-side
// to an ephemeral copy of the formulation's property set.

import type { OverridePair } from "./types.js";

export type ViewState = {
  classFilter: string;
  searchText: string;
  page: number;
  selectedEntity: string | null;
  whatIf: {
    task: string;
    formulation: string;
    added: OverridePair[];
    removed: OverridePair[];
  };
  queryDraft: string;
};

export const PRESET_QUERY = `PREFIX madb: <https://mardi4nfdi.de/mathalgodb/0.1#>
PREFIX mmdb: <https://mardi4nfdi.de/mathmoddb#>
SELECT ?mod ?task ?prob ?form ?alg
WHERE {
  mmdb:GravitationalEffectsOnFruit mmdb:modeledBy ?mod .
  ?task mmdb:appliesModel ?mod .
  ?task mmdb:equivalentTo ?prob .
  ?form mmdb:containedAsFormulationIn ?mod .
  ?alg madb:solves ?prob .
  FILTER (
    NOT EXISTS {
      ?alg madb:precludes ?precForm .
      FILTER (
        NOT EXISTS {
          ?precForm ?a ?b .
          FILTER (CONTAINS(STR(?a), STR(mmdb:)))
          FILTER (
            NOT EXISTS {
              ?form ?a ?b .
            })})})}
`;

export function initialState(): ViewState {
  return {
    classFilter: "",
    searchText: "",
    page: 1,
    selectedEntity: null,
    whatIf: {
      task: "mmdb:FreeFallDetermineVelocity",
      formulation: "mmdb:FreeFallEquationAirDrag",
      added: [],
      removed: [],
    },
    queryDraft: PRESET_QUERY,
  };
}

function samePair(a: OverridePair, b: OverridePair): boolean {
  return a.predicate === b.predicate && a.value === b.value;
}

/**
 * Toggle a stored property off / back on. First call marks the pair as
 * removed, the second call restores it.
 */
export function toggleRemoval(state: ViewState, pair: OverridePair): ViewState {
  const removed = state.whatIf.removed.some((p) => samePair(p, pair))
    ? state.whatIf.removed.filter((p) => !samePair(p, pair))
    : [...state.whatIf.removed, pair];
  return { ...state, whatIf: { ...state.whatIf, removed } };
}

/**
 * Toggle an extra property on / off. The vocabulary is open: any
 * predicate the user types is sent verbatim.
 */
export function toggleAddition(state: ViewState, pair: OverridePair): ViewState {
  const added = state.whatIf.added.some((p) => samePair(p, pair))
    ? state.whatIf.added.filter((p) => !samePair(p, pair))
    : [...state.whatIf.added, pair];
  return { ...state, whatIf: { ...state.whatIf, added } };
}

export function clearOverrides(state: ViewState): ViewState {
  return { ...state, whatIf: { ...state.whatIf, added: [], removed: [] } };
}

/** Request body for POST /api/recommend; omits `overrides` when empty. */
export function recommendBody(state: ViewState): object {
  const { task, formulation, added, removed } = state.whatIf;
  const body: Record<string, unknown> = { task, formulation };
  if (added.length > 0 || removed.length > 0) {
    body.overrides = { add: added, remove: removed };
  }
  return body;
}
