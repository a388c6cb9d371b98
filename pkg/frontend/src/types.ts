/** DTOs mirroring the curation service JSON (all paths under /api/v1). */

export interface AssetSummary {
  asset_id: string;
  duration: number;
  revision: number;
  pipeline: string;
}

export interface TimelineDto {
  asset_id: string;
  bin: number;
  window: number;
  base_size: number;
  raw: number[];
  normalized: number[];
}

export interface ConfigDto {
  pipeline: "v1" | "v2";
  bin_s: number;
  window_s: number;
  k: number;
  merge_gap: number;
  min_len: number;
  snap_mode: "shot_cover" | "nearest_boundary" | "none";
  tag_expr: string | null;
  tag_min_overlap: number;
  max_total: number | null;
  top_k: number;
  cohort: "all" | "early" | "late";
  min_watch: number;
  require_replay: boolean;
}

export type SegmentStatus = "proposed" | "accepted" | "rejected" | "trimmed";

export interface SegmentRow {
  id: string;
  seed: { start: number; end: number };
  start: number;
  end: number;
  score: number;
  source: string;
  labels: string[];
  status: SegmentStatus;
  trim: { start: number; end: number } | null;
}

export interface SegmentsResponse {
  revision: number;
  config: ConfigDto;
  segments: SegmentRow[];
}

export interface MutationResponse {
  revision: number;
  config?: ConfigDto;
  segments: SegmentRow[];
}

export interface TagDto {
  label: string;
  category: string;
  start: number;
  end: number;
  confidence: number;
  source: string;
}

export interface TagsResponse {
  shots: number[];
  tags: TagDto[];
}

export type ReviewAction = "accept" | "reject" | "trim" | "clear";
export type ExportFormat = "json" | "concat_txt";
