// Payload shapes of the knowledge-graph HTTP API.

export type ClassInfo = {
  name: string;
  iri: string;
  qname: string;
  count: number;
};

export type EntitySummary = {
  iri: string;
  qname: string;
  label: string | null;
  class: string;
};

export type EntityPage = {
  total: number;
  page: number;
  pageSize: number;
  items: EntitySummary[];
};

export type TermJson =
  | { kind: "iri"; iri: string; qname: string }
  | { kind: "literal"; value: string; datatype: string; lang?: string };

export type EntityDetail = {
  iri: string;
  qname: string;
  label: string | null;
  types: string[];
  outgoing: { predicate: string; predicateQname: string; object: TermJson }[];
  incoming: { subject: string; subjectQname: string; predicate: string; predicateQname: string }[];
};

export type QueryResult = {
  header: string[];
  rows: string[][];
  warnings: string[];
};

export type QueryError = {
  error: { message: string; line: number; column: number; kind: string };
};

export type Reason = {
  relation: "requires" | "recommends" | "precludes";
  pattern: string;
  patternQname: string;
  matched: boolean;
};

export type VerdictJson = {
  algorithm: string;
  algorithmQname: string;
  status: "Recommended" | "Possible" | "Excluded";
  reasons: Reason[];
};

export type RecommendationJson = {
  task: string;
  taskQname: string;
  formulation: string;
  formulationQname: string;
  verdicts: VerdictJson[];
  excluded: VerdictJson[];
};

export type RecommendResponse = {
  recommendations: RecommendationJson[];
};

/** One (predicate, value) pair toggled on or off by the what-if panel. */
export type OverridePair = {
  predicate: string;
  value: boolean | number | string;
};
