/** SVG rendering of the rewatch timeline with detection context.
 *
 * Everything drawn is derived from service responses: the normalized series,
 * the IQR fence implied by it and the configured multiplier, segment
 * overlays colored by review status, and shot-boundary ticks.
 */

import type { SegmentRow, TimelineDto } from "./types.js";

export interface ChartGeometry {
  width: number;
  height: number;
  padLeft: number;
  padBottom: number;
}

export const DEFAULT_GEOMETRY: ChartGeometry = { width: 960, height: 240, padLeft: 40, padBottom: 20 };

export interface SeriesPoint {
  t: number; // content seconds
  value: number; // normalized metric value, exactly as served
  x: number;
  y: number;
}

export interface ChartModel {
  svg: string;
  points: SeriesPoint[];
  overlayPoints: SeriesPoint[];
  fence: number | null;
  fenceY: number | null;
  segmentRects: Array<{ id: string; status: string; x: number; w: number }>;
  shotTickXs: number[];
  legend: string[];
}

/** Linear interpolation quantile at q*(n-1), matching the detector's definition. */
export function quantile(sorted: number[], q: number): number {
  const n = sorted.length;
  if (n === 0) throw new Error("quantile of empty series");
  if (n === 1) return sorted[0];
  const pos = q * (n - 1);
  const lo = Math.floor(pos);
  if (lo >= n - 1) return sorted[n - 1];
  const frac = pos - lo;
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

export function iqrFence(normalized: number[], k: number): number {
  const sorted = [...normalized].sort((a, b) => a - b);
  const q1 = quantile(sorted, 0.25);
  const q3 = quantile(sorted, 0.75);
  return q3 + k * (q3 - q1);
}

const STATUS_COLOR: Record<string, string> = {
  proposed: "#f0a202",
  accepted: "#2a9d3a",
  rejected: "#c0392b",
  trimmed: "#2a7d9d",
};

function seriesPoints(tl: TimelineDto, duration: number, g: ChartGeometry): SeriesPoint[] {
  const plotW = g.width - g.padLeft;
  const plotH = g.height - g.padBottom;
  return tl.normalized.map((value, i) => {
    const t = i * tl.bin;
    return {
      t,
      value,
      x: g.padLeft + (t / duration) * plotW,
      y: plotH - value * (plotH - 4),
    };
  });
}

function polyline(points: SeriesPoint[], stroke: string): string {
  const attr = points.map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`).join(" ");
  return `<polyline fill="none" stroke="${stroke}" stroke-width="1" points="${attr}"/>`;
}

export function renderTimeline(
  timeline: TimelineDto,
  segments: SegmentRow[],
  shots: number[],
  k: number,
  overlay: TimelineDto | null = null,
  geometry: ChartGeometry = DEFAULT_GEOMETRY,
): ChartModel {
  const g = geometry;
  const duration = timeline.raw.length * timeline.bin;
  const plotW = g.width - g.padLeft;
  const plotH = g.height - g.padBottom;
  const xOf = (t: number) => g.padLeft + (t / duration) * plotW;
  const yOf = (v: number) => plotH - v * (plotH - 4);

  const points = seriesPoints(timeline, duration, g);
  const overlayPoints = overlay ? seriesPoints(overlay, duration, g) : [];

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${g.width}" height="${g.height}">`);

  // Segment overlays first so the series draws on top.
  const segmentRects = segments.map((s) => {
    const startEnd = s.status === "trimmed" && s.trim ? s.trim : s;
    const x = xOf(startEnd.start);
    const w = Math.max(1, xOf(startEnd.end) - x);
    const color = STATUS_COLOR[s.status] ?? STATUS_COLOR.proposed;
    parts.push(
      `<rect class="segment status-${s.status}" data-id="${s.id}" x="${x.toFixed(2)}" y="0" width="${w.toFixed(2)}" height="${plotH}" fill="${color}" fill-opacity="0.25"/>`,
    );
    return { id: s.id, status: s.status, x, w };
  });

  // Shot boundary ticks along the bottom edge.
  const shotTickXs = shots.map((b) => {
    const x = xOf(b);
    parts.push(
      `<line class="shot-tick" x1="${x.toFixed(2)}" y1="${plotH}" x2="${x.toFixed(2)}" y2="${plotH + 6}" stroke="#999" stroke-width="1"/>`,
    );
    return x;
  });

  // The metric line(s); constant series normalize to zero and plot flat.
  parts.push(polyline(points, "#1f4e79"));
  const legend = [overlay ? "early" : "all"];
  if (overlay) {
    parts.push(polyline(overlayPoints, "#b04a0e"));
    legend.push("late");
    parts.push(
      `<text class="legend" x="${g.padLeft + 8}" y="14" fill="#1f4e79">early</text>`,
      `<text class="legend" x="${g.padLeft + 64}" y="14" fill="#b04a0e">late</text>`,
    );
  }

  // IQR fence guide, derived from the served series and the configured k.
  let fence: number | null = null;
  let fenceY: number | null = null;
  if (timeline.normalized.length > 0 && !overlay) {
    fence = iqrFence(timeline.normalized, k);
    if (fence <= 1) {
      fenceY = yOf(fence);
      parts.push(
        `<line class="iqr-fence" x1="${g.padLeft}" y1="${fenceY.toFixed(2)}" x2="${g.width}" y2="${fenceY.toFixed(2)}" stroke="#c0392b" stroke-dasharray="4 3" stroke-width="1"/>`,
      );
    }
  }

  parts.push("</svg>");
  return { svg: parts.join("\n"), points, overlayPoints, fence, fenceY, segmentRects, shotTickXs, legend };
}
