/** Browser wiring for the curator console (no framework, poll-based refresh). */

import { ApiClient } from "./api.js";
import { renderTimeline } from "./chart.js";
import { controlAvailability, CuratorStore } from "./state.js";
import type { ConfigDto, ExportFormat, ReviewAction, UiState } from "./index.js";

const api = new ApiClient("");
const store = new CuratorStore(api, 250);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fmt(s: number): string {
  return s.toFixed(1);
}

function renderAssets(state: UiState): void {
  const select = el<HTMLSelectElement>("asset-select");
  select.innerHTML = state.assets
    .map((a) => `<option value="${a.asset_id}">${a.asset_id} (${fmt(a.duration)}s)</option>`)
    .join("");
  if (state.assetId) select.value = state.assetId;
}

function renderControls(state: UiState): void {
  if (!state.config) return;
  const enabled = controlAvailability(state.config);
  for (const [name, on] of Object.entries(enabled)) {
    const input = document.getElementById(`cfg-${name}`) as HTMLInputElement | null;
    if (input) input.disabled = !on;
  }
  for (const key of ["k", "merge_gap", "min_len", "window_s", "top_k"] as const) {
    const input = document.getElementById(`cfg-${key}`) as HTMLInputElement | null;
    if (input && document.activeElement !== input) input.value = String(state.config[key]);
  }
  el<HTMLSpanElement>("revision").textContent = `rev ${state.revision}`;
  el<HTMLDivElement>("error").textContent = state.error ?? "";
}

function renderSegments(state: UiState): void {
  const tbody = el<HTMLTableSectionElement>("segment-rows");
  tbody.innerHTML = state.segments
    .map(
      (s) => `
      <tr class="status-${s.status}" data-id="${s.id}">
        <td>${fmt(s.start)} - ${fmt(s.end)}</td>
        <td>${s.score.toFixed(3)}</td>
        <td>${s.status}</td>
        <td>
          <button data-action="accept" data-id="${s.id}">accept</button>
          <button data-action="reject" data-id="${s.id}">reject</button>
          <button data-action="clear" data-id="${s.id}">clear</button>
        </td>
      </tr>`,
    )
    .join("");
}

function renderChart(state: UiState): void {
  if (!state.timeline || !state.config) return;
  const overlay = state.cohortView === "overlay" ? state.lateTimeline : null;
  const base = state.cohortView === "overlay" && state.earlyTimeline ? state.earlyTimeline : state.timeline;
  const model = renderTimeline(base, state.segments, state.tags.shots, state.config.k, overlay);
  el<HTMLDivElement>("chart").innerHTML = model.svg;
}

function render(state: UiState): void {
  renderAssets(state);
  renderControls(state);
  renderSegments(state);
  renderChart(state);
}

async function download(format: ExportFormat): Promise<void> {
  const bytes = await store.exportReel(format);
  const name = format === "json" ? "reel.json" : "reel.concat.txt";
  const blob = new Blob([bytes as BlobPart]);
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = name;
  a.click();
  URL.revokeObjectURL(a.href);
}

function bind(): void {
  el<HTMLSelectElement>("asset-select").addEventListener("change", (ev) => {
    void store.selectAsset((ev.target as HTMLSelectElement).value);
  });
  for (const key of ["k", "merge_gap", "min_len", "window_s", "top_k"] as const) {
    const input = document.getElementById(`cfg-${key}`) as HTMLInputElement | null;
    input?.addEventListener("input", () => {
      void store.steerParameter({ [key]: Number(input.value) } as Partial<ConfigDto>);
    });
  }
  el<HTMLInputElement>("cfg-tag_expr").addEventListener("change", (ev) => {
    const value = (ev.target as HTMLInputElement).value;
    void store.steerParameter({ tag_expr: value || null });
  });
  el<HTMLSelectElement>("cohort-view").addEventListener("change", (ev) => {
    void store.setCohortView((ev.target as HTMLSelectElement).value as never);
  });
  el<HTMLTableSectionElement>("segment-rows").addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    const action = target.dataset.action as ReviewAction | undefined;
    const id = target.dataset.id;
    if (action && id) void store.review(id, action);
  });
  el<HTMLButtonElement>("export-json").addEventListener("click", () => void download("json"));
  el<HTMLButtonElement>("export-concat").addEventListener("click", () => void download("concat_txt"));
}

store.subscribe(render);
bind();
void store.refreshAssets().then(() => {
  if (store.state.assets.length > 0) return store.selectAsset(store.state.assets[0].asset_id);
});

// Poll-based refresh keeps a single curator's view honest without push machinery.
setInterval(() => {
  if (store.state.assetId && !store.state.pending) void store.refreshAssets();
}, 15_000);
