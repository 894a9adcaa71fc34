/** API client contract: ETag capture, If-Match submits, 412 -> refresh. */
import { describe, expect, it } from "vitest";

import { ApiRequestError, HonorApi, StaleCycleError } from "../src/api.js";
import { cycleKey } from "../src/etags.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function fakeFetch(handler: (call: Call) => Response): typeof fetch {
  return (async (url: string, init?: RequestInit) => handler({ url, init })) as typeof fetch;
}

function jsonResponse(body: unknown, status = 200, headers: Record<string, string> = {}): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json", ...headers },
  });
}

const CYCLE = { kind: "Star", period: "2021-07", status: "Slated", slate: [], decisions: [] };

describe("honor api client", () => {
  it("sends the bearer token on every call", async () => {
    const calls: Call[] = [];
    const api = new HonorApi("http://svc", "tok", fakeFetch((c) => {
      calls.push(c);
      return jsonResponse({ as_of: null });
    }));
    await api.wall();
    expect((calls[0].init?.headers as Record<string, string>)["Authorization"]).toBe("Bearer tok");
  });

  it("remembers the cycle ETag and replays it as If-Match", async () => {
    const calls: Call[] = [];
    const api = new HonorApi("http://svc", "tok", fakeFetch((c) => {
      calls.push(c);
      if (!c.init?.method) return jsonResponse(CYCLE, 200, { ETag: '"abc123"' });
      return jsonResponse({ ...CYCLE, status: "Decided", audit_seq: 7 });
    }));
    await api.cycle("Star", "2021-07");
    expect(api.etags.get(cycleKey("Star", "2021-07"))).toBe('"abc123"');

    await api.decide("Star", "2021-07", [{ recipient_id: "c01" }], ["c01"]);
    const headers = calls[1].init?.headers as Record<string, string>;
    expect(headers["If-Match"]).toBe('"abc123"');
  });

  it("maps 412 to StaleCycleError and drops the stale ETag", async () => {
    const api = new HonorApi("http://svc", "tok", fakeFetch((c) => {
      if (!c.init?.method) return jsonResponse(CYCLE, 200, { ETag: '"old"' });
      return jsonResponse({ error: "StaleState", detail: "refresh" }, 412);
    }));
    await api.cycle("Star", "2021-07");
    await expect(api.decide("Star", "2021-07", [], [])).rejects.toBeInstanceOf(StaleCycleError);
    expect(api.etags.get(cycleKey("Star", "2021-07"))).toBeUndefined();
  });

  it("surfaces service errors with their rule code", async () => {
    const api = new HonorApi("http://svc", "tok", fakeFetch(() =>
      jsonResponse({ error: "TooManyRecipients", detail: "Star 2021-07: 11 recipients exceed the 10-slot cap" }, 409),
    ));
    try {
      await api.openCycle("Star", "2021-07");
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiRequestError);
      expect((err as ApiRequestError).status).toBe(409);
      expect((err as ApiRequestError).body.error).toBe("TooManyRecipients");
      expect((err as ApiRequestError).message).toContain("10-slot cap");
    }
  });
});
