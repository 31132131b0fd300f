import { describe, expect, it } from "vitest";
import { ServiceClient, ServiceError } from "../src/client.js";
import { FrameObj } from "../src/schema.js";

function frames(n: number): FrameObj[] {
  return Array.from({ length: n }, (_, i) => ({
    t: i * 10,
    left: "open" as const,
    right: "index" as const,
    f0: null,
    f1: [0, 100, 0] as [number, number, number],
    f2: null,
    f3: null,
    f4: null,
  }));
}

function okResponse(body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status: 200,
    headers: { "Content-Type": "application/json" },
  });
}

describe("ServiceClient", () => {
  it("posts frames and returns the parsed response", async () => {
    let seen: unknown = null;
    const client = new ServiceClient("", async (url, init) => {
      expect(String(url)).toBe("/classify");
      seen = JSON.parse(String(init?.body));
      return okResponse({ ranking: [["circle", -1.0]], rejected: false });
    });
    const resp = await client.classify(frames(8), { top_n: 2 });
    expect(resp.ranking[0]![0]).toBe("circle");
    expect((seen as { options: { top_n: number } }).options.top_n).toBe(2);
  });

  it("surfaces server validation messages with the status", async () => {
    const client = new ServiceClient("", async () =>
      new Response(JSON.stringify({ detail: "need at least 7 frames" }), { status: 400 }),
    );
    await expect(client.classify(frames(8))).rejects.toThrowError(ServiceError);
    await client.classify(frames(8)).catch((err: ServiceError) => {
      expect(err.status).toBe(400);
      expect(err.message).toMatch(/at least 7/);
    });
  });

  it("wraps network failures as unreachable", async () => {
    const client = new ServiceClient("", async () => {
      throw new TypeError("fetch failed");
    });
    await client.classify(frames(8)).catch((err: ServiceError) => {
      expect(err.status).toBeNull();
      expect(err.message).toMatch(/unreachable/);
    });
  });

  it("serializes classify calls: one request in flight at a time", async () => {
    let active = 0;
    let maxActive = 0;
    const client = new ServiceClient("", async () => {
      active++;
      maxActive = Math.max(maxActive, active);
      await new Promise((r) => setTimeout(r, 10));
      active--;
      return okResponse({ ranking: [["a", 0]], rejected: false });
    });
    await Promise.all([
      client.classify(frames(8)),
      client.classify(frames(8)),
      client.classify(frames(8)),
    ]);
    expect(maxActive).toBe(1);
  });

  it("fetches render artifacts as text", async () => {
    const client = new ServiceClient("", async () =>
      new Response("# airshapes mesh\nv 0 0 0\n", { status: 200 }),
    );
    const art = await client.render({ label: "cube", kind: "mesh", params: {} });
    expect(art.body).toMatch(/^# airshapes mesh/);
    expect(art.kind).toBe("mesh");
  });
});
