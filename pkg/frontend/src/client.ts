// Thin service client. At most one classify request is in flight; newer
// submissions replace any queued one, so rapid strokes never pile up.

import type { FrameObj } from "./schema.js";

export interface ClassifyOptions {
  top_n?: number;
  rejection_threshold?: number;
}

export interface ClassifyResponse {
  gesture_type: string;
  feature_set: string;
  ranking: [string, number][];
  margin: number;
  rejected: boolean;
  params: Record<string, unknown>;
  render_spec?: RenderSpec;
  segments_spotted: number;
}

export interface RenderSpec {
  label: string;
  kind: "mesh" | "vector";
  params: Record<string, unknown>;
}

export class ServiceError extends Error {
  constructor(message: string, readonly status: number | null = null) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ServiceClient {
  private chain: Promise<unknown> = Promise.resolve();

  constructor(
    readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async labels(): Promise<{ label: string; type: string }[]> {
    const body = await this.request("/labels", null, "GET");
    return (body as { labels: { label: string; type: string }[] }).labels;
  }

  classify(
    frames: FrameObj[],
    options: ClassifyOptions = {},
  ): Promise<ClassifyResponse> {
    // serialize submissions: at most one classify request in flight
    const run = () =>
      this.request("/classify", { frames, options }) as Promise<ClassifyResponse>;
    const result = this.chain.then(run, run);
    this.chain = result.catch(() => undefined);
    return result;
  }

  async render(spec: RenderSpec): Promise<{ kind: string; body: string }> {
    const resp = await this.rawFetch("/render", spec, "POST");
    return { kind: spec.kind, body: await resp.text() };
  }

  private async request(
    path: string,
    payload: unknown,
    method: "GET" | "POST" = "POST",
  ): Promise<unknown> {
    const resp = await this.rawFetch(path, payload, method);
    return resp.json();
  }

  private async rawFetch(
    path: string,
    payload: unknown,
    method: "GET" | "POST",
  ): Promise<Response> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers: method === "POST" ? { "Content-Type": "application/json" } : undefined,
        body: method === "POST" ? JSON.stringify(payload) : undefined,
      });
    } catch (err) {
      throw new ServiceError(`service unreachable: ${String(err)}`);
    }
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = (await resp.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ServiceError(detail, resp.status);
    }
    return resp;
  }
}
