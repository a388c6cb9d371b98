export { ApiClient, ApiError } from "./api.js";
export { renderTimeline, iqrFence, quantile } from "./chart.js";
export { CuratorStore, controlAvailability, validateTagExpr } from "./state.js";
export type { UiState, CohortView } from "./state.js";
export type {
  AssetSummary,
  ConfigDto,
  ExportFormat,
  MutationResponse,
  ReviewAction,
  SegmentRow,
  SegmentsResponse,
  SegmentStatus,
  TagDto,
  TagsResponse,
  TimelineDto,
} from "./types.js";
