/** Curator session state: config mirror, segment statuses, revision tracking.
 *
 * The config mirror always reflects the last server revision this client has
 * acknowledged; parameter changes are debounced and carry that revision, and
 * a 409 answer triggers reload-then-replay so the UI converges to server
 * state within one refresh cycle.
 */

import { ApiClient, ApiError } from "./api.js";
import type {
  AssetSummary,
  ConfigDto,
  ExportFormat,
  MutationResponse,
  ReviewAction,
  SegmentRow,
  TagsResponse,
  TimelineDto,
} from "./types.js";

export type CohortView = "all" | "early" | "late" | "overlay";

export interface UiState {
  assets: AssetSummary[];
  assetId: string | null;
  duration: number;
  cohortView: CohortView;
  config: ConfigDto | null;
  revision: number;
  segments: SegmentRow[];
  timeline: TimelineDto | null;
  earlyTimeline: TimelineDto | null;
  lateTimeline: TimelineDto | null;
  tags: TagsResponse;
  error: string | null;
  pending: boolean;
}

const emptyState = (): UiState => ({
  assets: [],
  assetId: null,
  duration: 0,
  cohortView: "all",
  config: null,
  revision: 0,
  segments: [],
  timeline: null,
  earlyTimeline: null,
  lateTimeline: null,
  tags: { shots: [], tags: [] },
  error: null,
  pending: false,
});

/** Validate a tag expression client side; returns an error message or null.
 *
 * Mirrors the server grammar: expr := term (OR term)*; term := atom (AND
 * atom)*; atom := [category ":"] label | "(" expr ")".
 */
export function validateTagExpr(source: string): string | null {
  const tokens = source.match(/\(|\)|[^\s()]+/g) ?? [];
  if (tokens.length === 0) return "empty expression";
  let pos = 0;

  const atom = (): string | null => {
    const tok = tokens[pos];
    if (tok === undefined) return "expected a tag atom";
    if (tok === "(") {
      pos += 1;
      const err = expr();
      if (err) return err;
      if (tokens[pos] !== ")") return "expected ')'";
      pos += 1;
      return null;
    }
    if (tok === ")") return "unexpected ')'";
    const upper = tok.toUpperCase();
    if (upper === "AND" || upper === "OR") return `expected a tag atom, got keyword '${tok}'`;
    if (tok.includes(":")) {
      const [category, ...rest] = tok.split(":");
      if (!category || rest.join(":").length === 0) return `malformed atom '${tok}'`;
    }
    pos += 1;
    return null;
  };

  const term = (): string | null => {
    let err = atom();
    while (!err && tokens[pos]?.toUpperCase() === "AND") {
      pos += 1;
      err = atom();
    }
    return err;
  };

  const expr = (): string | null => {
    let err = term();
    while (!err && tokens[pos]?.toUpperCase() === "OR") {
      pos += 1;
      err = term();
    }
    return err;
  };

  const err = expr();
  if (err) return err;
  if (pos < tokens.length) return `unexpected token '${tokens[pos]}'`;
  return null;
}

/** Which controls a pipeline mode enables (v2 disables V1 refinement knobs). */
export function controlAvailability(config: ConfigDto | null): Record<string, boolean> {
  const v1 = config?.pipeline !== "v2";
  return {
    k: v1,
    merge_gap: v1,
    min_len: v1,
    snap_mode: true,
    tag_expr: v1,
    top_k: !v1,
    window_s: true,
    bin_s: true,
  };
}

export class CuratorStore {
  state: UiState = emptyState();
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private pendingPatch: Partial<ConfigDto> = {};
  private listeners: Array<(s: UiState) => void> = [];

  constructor(
    private api: ApiClient,
    private debounceMs = 250,
  ) {}

  subscribe(fn: (s: UiState) => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  private applyMutation(doc: MutationResponse): void {
    this.state.revision = doc.revision;
    if (doc.config) this.state.config = doc.config;
    this.state.segments = doc.segments;
    this.state.error = null;
    this.emit();
  }

  async refreshAssets(): Promise<void> {
    this.state.assets = await this.api.listAssets();
    this.emit();
  }

  async selectAsset(assetId: string): Promise<void> {
    const doc = await this.api.getSegments(assetId);
    this.state.assetId = assetId;
    this.state.config = doc.config;
    this.state.revision = doc.revision;
    this.state.segments = doc.segments;
    this.state.timeline = await this.api.getTimeline(assetId, "all");
    this.state.tags = await this.api.getTags(assetId);
    this.state.duration = this.state.timeline.raw.length * this.state.timeline.bin;
    this.state.error = null;
    this.emit();
  }

  async setCohortView(view: CohortView): Promise<void> {
    if (!this.state.assetId) return;
    this.state.cohortView = view;
    if (view === "overlay") {
      this.state.earlyTimeline = await this.api.getTimeline(this.state.assetId, "early");
      this.state.lateTimeline = await this.api.getTimeline(this.state.assetId, "late");
    } else {
      this.state.timeline = await this.api.getTimeline(this.state.assetId, view);
    }
    this.emit();
  }

  /** Queue a config change; changes within the debounce window coalesce. */
  steerParameter(patch: Partial<ConfigDto>): Promise<void> {
    if (typeof patch.tag_expr === "string" && patch.tag_expr.length > 0) {
      const err = validateTagExpr(patch.tag_expr);
      if (err) {
        this.state.error = `tag expression: ${err}`;
        this.emit();
        return Promise.resolve();
      }
    }
    this.pendingPatch = { ...this.pendingPatch, ...patch };
    return new Promise((resolve, reject) => {
      if (this.debounceTimer) clearTimeout(this.debounceTimer);
      this.debounceTimer = setTimeout(() => {
        this.flushPatch().then(resolve, reject);
      }, this.debounceMs);
    });
  }

  private async flushPatch(): Promise<void> {
    if (!this.state.assetId || Object.keys(this.pendingPatch).length === 0) return;
    const assetId = this.state.assetId;
    const patch = this.pendingPatch;
    this.pendingPatch = {};
    this.state.pending = true;
    try {
      const doc = await this.api.patchConfig(assetId, patch, this.state.revision);
      this.applyMutation(doc);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // Someone else moved the session forward: adopt server state, then
        // replay this change once on the fresh revision.
        const fresh = await this.api.getSegments(assetId);
        this.state.revision = fresh.revision;
        this.state.config = fresh.config;
        this.state.segments = fresh.segments;
        const doc = await this.api.patchConfig(assetId, patch, this.state.revision);
        this.applyMutation(doc);
      } else {
        this.state.error = String(err);
        this.emit();
        throw err;
      }
    } finally {
      this.state.pending = false;
      this.emit();
    }
  }

  /** Accept/reject/trim with an optimistic local update, rolled back on failure. */
  async review(
    segmentId: string,
    action: ReviewAction,
    trim?: { start: number; end: number },
  ): Promise<void> {
    if (!this.state.assetId) return;
    if (action === "trim") {
      if (!trim || !(0 <= trim.start && trim.start < trim.end && trim.end <= this.state.duration)) {
        this.state.error = "trim interval must lie inside the asset";
        this.emit();
        return; // blocked client side, no request
      }
    }
    const optimistic: Record<ReviewAction, SegmentRow["status"]> = {
      accept: "accepted",
      reject: "rejected",
      trim: "trimmed",
      clear: "proposed",
    };
    const before = this.state.segments;
    this.state.segments = this.state.segments.map((row) =>
      row.id === segmentId
        ? { ...row, status: optimistic[action], trim: action === "trim" && trim ? trim : null }
        : row,
    );
    this.emit();
    try {
      const doc = await this.api.postStatus(
        this.state.assetId,
        segmentId,
        action,
        this.state.revision,
        trim,
      );
      this.applyMutation(doc);
    } catch (err) {
      this.state.segments = before;
      this.state.error = String(err);
      this.emit();
      throw err;
    }
  }

  /** Download the reel exactly as the service serialized it. */
  async exportReel(format: ExportFormat): Promise<Uint8Array> {
    if (!this.state.assetId) throw new Error("no asset selected");
    return this.api.exportReel(this.state.assetId, format);
  }
}
