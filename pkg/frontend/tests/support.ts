// Test helpers: an ApiClient wired to recorded server fixtures, a fake mount
// point so the controller runs without a DOM, and a request log so tests can
// assert what was (or was not) sent.

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import fixtures from "./fixtures.json" with { type: "json" };

export { fixtures };

export interface RecordedCall {
  url: string;
  body: unknown;
}

function stable(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(stable).join(",")}]`;
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([k, v]) => `${JSON.stringify(k)}:${stable(v)}`);
    return `{${entries.join(",")}}`;
  }
  return JSON.stringify(value);
}

export function fixtureClient(log: RecordedCall[] = []): ApiClient {
  const routes = new Map<string, unknown>();
  for (const entry of Object.values(fixtures) as { request: unknown; response: unknown }[]) {
    const url = urlFor(entry.request);
    routes.set(`${url}|${stable(entry.request)}`, entry.response);
  }

  const mockFetch = async (url: string, init: RequestInit): Promise<Response> => {
    const body = JSON.parse(String(init.body));
    log.push({ url, body });
    const match = routes.get(`${url}|${stable(body)}`);
    if (match === undefined) {
      return new Response(
        JSON.stringify({ error: "validation", message: `no fixture for ${url}` }),
        { status: 400, headers: { "content-type": "application/json" } },
      );
    }
    return new Response(JSON.stringify(match), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  };

  return new ApiClient("", mockFetch);
}

function urlFor(request: unknown): string {
  const body = request as Record<string, unknown>;
  if ("template" in body) {
    return "/v1/report";
  }
  if ("n_from" in body) {
    return "/v1/curve";
  }
  if ("data_a" in body) {
    return "/v1/analyze";
  }
  if ("n_per_arm" in body) {
    return "/v1/oc";
  }
  return "/v1/sample-size";
}

// minimal stand-in for the mount element: the controller only assigns
// innerHTML and registers delegated listeners
export function fakeRoot(): HTMLElement {
  return {
    innerHTML: "",
    addEventListener: () => undefined,
  } as unknown as HTMLElement;
}

export function makeApp(log: RecordedCall[] = []): App {
  return new App(fakeRoot(), fixtureClient(log));
}
