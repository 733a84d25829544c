// Thin fetch client for the /v1 API. A fetch implementation can be injected,
// which is how the tests run fully against recorded fixtures.

import type {
  AnalyzeBody,
  CurveResult,
  DecisionReport,
  DeferredResponse,
  DesignSpecBody,
  Envelope,
  OcResult,
  OcScenarioBody,
  ReportKind,
  ReportResult,
  ReportTemplate,
  SampleSizeResult,
  SearchMethod,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly kind: string;

  constructor(status: number, kind: string, message: string) {
    super(message);
    this.status = status;
    this.kind = kind;
  }
}

type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async post<T>(path: string, body: unknown): Promise<Envelope<T>> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await response.json();
    if (response.status === 202) {
      const deferred = payload as DeferredResponse;
      throw new ApiError(202, "deferred", deferred.message);
    }
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload?.error ?? "unknown",
        payload?.message ?? `request failed with status ${response.status}`,
      );
    }
    return payload as Envelope<T>;
  }

  sampleSize(spec: DesignSpecBody, method: SearchMethod): Promise<Envelope<SampleSizeResult>> {
    return this.post("/v1/sample-size", { ...spec, method });
  }

  curve(
    spec: DesignSpecBody,
    method: SearchMethod,
    nFrom: number,
    nTo: number,
  ): Promise<Envelope<CurveResult>> {
    return this.post("/v1/curve", { spec, method, n_from: nFrom, n_to: nTo });
  }

  analyze(body: AnalyzeBody): Promise<Envelope<DecisionReport>> {
    return this.post("/v1/analyze", body);
  }

  oc(body: OcScenarioBody): Promise<Envelope<OcResult>> {
    return this.post("/v1/oc", body);
  }

  report(
    kind: ReportKind,
    template: ReportTemplate,
    spec: unknown,
    method?: SearchMethod,
  ): Promise<Envelope<ReportResult>> {
    const body: Record<string, unknown> = { kind, template, spec };
    if (method) {
      body.method = method;
    }
    return this.post("/v1/report", body);
  }
}
