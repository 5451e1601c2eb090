// Thin typed client over fetch. The fetch function is injectable so tests
// can run without a server.

import type {
  ClassInfo,
  EntityDetail,
  EntityPage,
  QueryResult,
  RecommendResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly detail: unknown,
  ) {
    super(message);
  }
}

export class ConnectionError extends Error {}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (cause) {
      throw new ConnectionError(`cannot reach the knowledge-graph service: ${cause}`);
    }
    if (!response.ok) {
      let detail: unknown = null;
      try {
        detail = await response.json();
      } catch {
        // non-JSON error body; keep the status only
      }
      const message =
        detail && typeof detail === "object" && "error" in detail
          ? JSON.stringify((detail as { error: unknown }).error)
          : `request failed with ${response.status}`;
      throw new ApiError(message, response.status, detail);
    }
    return response;
  }

  async classes(): Promise<ClassInfo[]> {
    return (await this.request("/api/classes")).json();
  }

  async entities(params: {
    classFilter?: string;
    q?: string;
    page?: number;
    pageSize?: number;
  }): Promise<EntityPage> {
    const search = new URLSearchParams();
    if (params.classFilter) search.set("class", params.classFilter);
    if (params.q) search.set("q", params.q);
    if (params.page) search.set("page", String(params.page));
    if (params.pageSize) search.set("pageSize", String(params.pageSize));
    const suffix = search.toString() ? `?${search}` : "";
    return (await this.request(`/api/entities${suffix}`)).json();
  }

  async entity(iri: string): Promise<EntityDetail> {
    return (await this.request(`/api/entity/${encodeURIComponent(iri)}`)).json();
  }

  async query(text: string): Promise<QueryResult> {
    return (
      await this.request("/api/query", { method: "POST", body: text })
    ).json();
  }

  async queryCsv(text: string): Promise<string> {
    const response = await this.request("/api/query", {
      method: "POST",
      body: text,
      headers: { accept: "text/csv" },
    });
    return response.text();
  }

  async recommend(body: object): Promise<RecommendResponse> {
    const response = await this.request("/api/recommend", {
      method: "POST",
      body: JSON.stringify(body),
      headers: { "content-type": "application/json" },
    });
    return response.json();
  }
}
