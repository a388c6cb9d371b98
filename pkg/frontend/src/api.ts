/** Thin typed client for the curation service; every byte shown in the UI comes through here. */

import type {
  AssetSummary,
  ConfigDto,
  ExportFormat,
  MutationResponse,
  ReviewAction,
  SegmentsResponse,
  TagsResponse,
  TimelineDto,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => globalThis.fetch(url, init),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<Response> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const doc = await resp.json();
        if (doc && typeof doc.detail === "string") detail = doc.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return resp;
  }

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    return (await this.request(method, path, body)).json() as Promise<T>;
  }

  listAssets(): Promise<AssetSummary[]> {
    return this.json("GET", "/api/v1/assets");
  }

  getTimeline(assetId: string, cohort: "all" | "early" | "late" = "all"): Promise<TimelineDto> {
    return this.json("GET", `/api/v1/assets/${assetId}/timeline?cohort=${cohort}`);
  }

  getSegments(assetId: string): Promise<SegmentsResponse> {
    return this.json("GET", `/api/v1/assets/${assetId}/segments`);
  }

  getTags(assetId: string): Promise<TagsResponse> {
    return this.json("GET", `/api/v1/assets/${assetId}/tags`);
  }

  patchConfig(assetId: string, config: Partial<ConfigDto>, revision: number): Promise<MutationResponse> {
    return this.json("PATCH", `/api/v1/assets/${assetId}/config`, { config, revision });
  }

  postStatus(
    assetId: string,
    segmentId: string,
    action: ReviewAction,
    revision: number,
    trim?: { start: number; end: number },
  ): Promise<MutationResponse> {
    return this.json("POST", `/api/v1/assets/${assetId}/segments/${segmentId}/status`, {
      action,
      revision,
      ...(trim ?? {}),
    });
  }

  async exportReel(assetId: string, format: ExportFormat): Promise<Uint8Array> {
    const resp = await this.request("POST", `/api/v1/assets/${assetId}/export?format=${format}`);
    return new Uint8Array(await resp.arrayBuffer());
  }
}
