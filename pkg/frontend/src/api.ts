/**
 * Thin client for the assessment service HTTP API.
 *
 * The fetch implementation is injected so tests can run without a network
 * and the browser build can pass `window.fetch` straight through.
 */

import type {
  AssessmentReport,
  BaselineTable,
  ErrorEnvelope,
  MonteCarloSensitivity,
  ScenarioDocument,
  TornadoReport,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly code: string;
  readonly path: string;
  readonly status: number;
  readonly issues: ErrorEnvelope["error"]["issues"];

  constructor(status: number, body: ErrorEnvelope["error"]) {
    super(body.path ? `[${body.code}] ${body.path}: ${body.message}` : `[${body.code}] ${body.message}`);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.path = body.path;
    this.issues = body.issues;
  }
}

export interface RequestOptions {
  signal?: AbortSignal;
}

interface ClientConfig {
  baseUrl?: string;
  fetchFn?: FetchLike;
}

async function raiseFromResponse(response: Response): Promise<never> {
  let parsed: unknown = null;
  try {
    parsed = await response.json();
  } catch {
    parsed = null;
  }
  if (parsed && typeof parsed === "object" && "error" in parsed) {
    const body = (parsed as ErrorEnvelope).error;
    if (body && typeof body.code === "string") {
      throw new ApiError(response.status, body);
    }
  }
  throw new ApiError(response.status, {
    code: `http-${response.status}`,
    path: "",
    message: response.statusText || "request failed",
  });
}

export class WorkbenchClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(config: ClientConfig = {}) {
    this.baseUrl = (config.baseUrl ?? "").replace(/\/$/, "");
    const fn = config.fetchFn ?? (globalThis.fetch as FetchLike | undefined);
    if (!fn) {
      throw new Error("no fetch implementation available");
    }
    this.fetchFn = fn;
  }

  private url(path: string, params?: Record<string, string | number | undefined>): string {
    const query = new URLSearchParams();
    if (params) {
      for (const [key, value] of Object.entries(params)) {
        if (value !== undefined) {
          query.set(key, String(value));
        }
      }
    }
    const suffix = query.toString();
    return suffix ? `${this.baseUrl}${path}?${suffix}` : `${this.baseUrl}${path}`;
  }

  private async request<T>(
    method: string,
    path: string,
    params?: Record<string, string | number | undefined>,
    body?: unknown,
    options?: RequestOptions,
  ): Promise<T> {
    const init: RequestInit = { method, signal: options?.signal };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "content-type": "application/json" };
    }
    const response = await this.fetchFn(this.url(path, params), init);
    if (!response.ok) {
      await raiseFromResponse(response);
    }
    return (await response.json()) as T;
  }

  assess(doc: ScenarioDocument, seed?: number, options?: RequestOptions): Promise<AssessmentReport> {
    return this.request("POST", "/v1/assess", { seed }, doc, options);
  }

  sensitivityTornado(doc: ScenarioDocument, options?: RequestOptions): Promise<TornadoReport> {
    return this.request("POST", "/v1/sensitivity", { mode: "tornado" }, doc, options);
  }

  sensitivityMonteCarlo(
    doc: ScenarioDocument,
    params: { samples?: number; seed?: number } = {},
    options?: RequestOptions,
  ): Promise<MonteCarloSensitivity> {
    return this.request(
      "POST",
      "/v1/sensitivity",
      { mode: "montecarlo", samples: params.samples, seed: params.seed },
      doc,
      options,
    );
  }

  audit(doc: ScenarioDocument, options?: RequestOptions): Promise<unknown> {
    return this.request("POST", "/v1/audit", undefined, doc, options);
  }

  baseline(doc: ScenarioDocument, horizon: number, options?: RequestOptions): Promise<BaselineTable> {
    return this.request("POST", "/v1/baseline", { horizon }, doc, options);
  }

  schema(options?: RequestOptions): Promise<Record<string, unknown>> {
    return this.request("GET", "/v1/schema", undefined, undefined, options);
  }

  putScenario(id: string, doc: ScenarioDocument, options?: RequestOptions): Promise<unknown> {
    return this.request("PUT", `/v1/scenarios/${encodeURIComponent(id)}`, undefined, doc, options);
  }

  getScenario(id: string, options?: RequestOptions): Promise<ScenarioDocument> {
    return this.request("GET", `/v1/scenarios/${encodeURIComponent(id)}`, undefined, undefined, options);
  }
}
