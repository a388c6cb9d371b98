"""Post-processing of seed segments: merge, expand, snap to shots, tag filter, budget."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsortedInput
from .metadata import MetadataTag, ShotTrack
from .segments import Segment, overlap_seconds, union_intervals
from .tagexpr import parse_tag_expr

SNAP_MODES = ("shot_cover", "nearest_boundary", "none")


@dataclass(frozen=True)
class RefineConfig:
    merge_gap: float = 5.0
    min_len: float = 15.0
    snap_mode: str = "shot_cover"
    max_total: float | None = None
    tag_min_overlap: float = 0.0

    def __post_init__(self):
        if self.merge_gap < 0:
            raise ValueError("merge_gap must be >= 0")
        if self.min_len <= 0:
            raise ValueError("min_len must be > 0")
        if self.snap_mode not in SNAP_MODES:
            raise ValueError(f"snap_mode must be one of {SNAP_MODES}")
        if self.max_total is not None and self.max_total <= 0:
            raise ValueError("max_total must be > 0 when present")
        if self.tag_min_overlap < 0:
            raise ValueError("tag_min_overlap must be >= 0")


def _check_sorted(segments: list[Segment]) -> None:
    if any(b.start < a.start for a, b in zip(segments, segments[1:])):
        raise UnsortedInput("segments must be sorted by start")


def _merge_group(group: list[Segment]) -> Segment:
    if len(group) == 1:
        return group[0]
    total = sum(s.duration for s in group)
    score = sum(s.score * s.duration for s in group) / total
    labels = frozenset().union(*(s.labels for s in group))
    return Segment(
        start=group[0].start,
        end=max(s.end for s in group),
        score=score,
        source=group[0].source,
        labels=labels,
    )


def merge_close(segments: list[Segment], merge_gap: float) -> list[Segment]:
    """Join consecutive segments whose gap is <= merge_gap (inclusive boundary).

    Member scores blend as a duration-weighted mean so a short spike cannot
    dominate a long merge; labels union. A single left-to-right pass reaches
    the fixpoint on sorted input.
    """
    _check_sorted(segments)
    if not segments:
        return []
    merged: list[Segment] = []
    group = [segments[0]]
    span_end = segments[0].end
    for seg in segments[1:]:
        if seg.start - span_end <= merge_gap:
            group.append(seg)
            span_end = max(span_end, seg.end)
        else:
            merged.append(_merge_group(group))
            group = [seg]
            span_end = seg.end
    merged.append(_merge_group(group))
    return merged


def expand_short(segments: list[Segment], min_len: float, duration: float) -> list[Segment]:
    """Grow segments shorter than min_len symmetrically about their midpoint.

    At the asset edges the window shifts inward instead of clipping short.
    Overlaps created by expansion are re-merged.
    """
    out = []
    for seg in segments:
        if seg.duration >= min_len:
            out.append(seg)
            continue
        mid = (seg.start + seg.end) / 2.0
        start = mid - min_len / 2.0
        end = mid + min_len / 2.0
        if start < 0:
            start, end = 0.0, min(min_len, duration)
        elif end > duration:
            start, end = max(0.0, duration - min_len), duration
        out.append(seg.with_bounds(start, end))
    out.sort(key=lambda s: (s.start, s.end))
    return merge_close(out, 0.0)


def snap_to_shots(segments: list[Segment], shots: ShotTrack, mode: str = "shot_cover") -> list[Segment]:
    """Align segments to shot boundaries.

    shot_cover: replace each segment with the minimal run of whole shots
    intersecting it (whole shots keep the cut coherent). nearest_boundary:
    move each endpoint to its nearest boundary, ties expanding outward; a
    collapsed result falls back to the shot containing the segment midpoint,
    a midpoint exactly on a boundary taking both adjacent shots.
    """
    if mode not in SNAP_MODES:
        raise ValueError(f"snap_mode must be one of {SNAP_MODES}")
    if mode == "none":
        return list(segments)
    out = []
    for seg in segments:
        if mode == "shot_cover":
            i, j = shots.covering_run(seg.start, seg.end)
            out.append(seg.with_bounds(shots.boundaries[i], shots.boundaries[j + 1]))
        else:
            out.append(_snap_nearest(seg, shots))
    out.sort(key=lambda s: (s.start, s.end))
    return merge_close(out, 0.0)


def _nearest_boundary(t: float, shots: ShotTrack, prefer_low: bool) -> float:
    best = min(
        shots.boundaries,
        key=lambda b: (abs(b - t), b if prefer_low else -b),
    )
    return best


def _snap_nearest(seg: Segment, shots: ShotTrack) -> Segment:
    start = _nearest_boundary(seg.start, shots, prefer_low=True)
    end = _nearest_boundary(seg.end, shots, prefer_low=False)
    if end > start:
        return seg.with_bounds(start, end)
    # Collapsed: use the shot containing the original midpoint; a midpoint
    # sitting exactly on an interior boundary ties outward to both shots.
    mid = (seg.start + seg.end) / 2.0
    b = shots.boundaries
    i = shots.shot_containing(mid)
    if 0 < i and b[i] == mid:
        return seg.with_bounds(b[i - 1], b[i + 1])
    return seg.with_bounds(b[i], b[i + 1])


def filter_by_tags(
    segments: list[Segment],
    expr,
    tags: list[MetadataTag],
    tag_min_overlap: float = 0.0,
) -> list[Segment]:
    """Keep segments whose tag overlaps satisfy the boolean expression.

    An atom holds when the segment's overlap with the union of matching tag
    intervals strictly exceeds tag_min_overlap (default 0: any overlap).
    """
    if isinstance(expr, str):
        expr = parse_tag_expr(expr)

    by_key: dict[tuple[str | None, str], list[tuple[float, float]]] = {}
    for tag in tags:
        by_key.setdefault((tag.category, tag.label), []).append((tag.start, tag.end))
        by_key.setdefault((None, tag.label), []).append((tag.start, tag.end))

    def keep(seg: Segment) -> bool:
        def match(category: str | None, label: str) -> bool:
            spans = union_intervals(by_key.get((category, label), []))
            got = sum(overlap_seconds(seg.start, seg.end, a, b) for a, b in spans)
            return got > tag_min_overlap

        return expr.evaluate(match)

    return [seg for seg in segments if keep(seg)]


def enforce_budget(segments: list[Segment], max_total: float | None) -> list[Segment]:
    """Drop lowest-scoring segments (ties: later start first) until within the duration budget."""
    if max_total is None:
        return list(segments)
    kept = list(segments)
    total = sum(s.duration for s in kept)
    while kept and total > max_total:
        victim = min(kept, key=lambda s: (s.score, -s.start))
        kept.remove(victim)
        total -= victim.duration
    return kept


def refine_segments(
    segments: list[Segment],
    cfg: RefineConfig,
    shots: ShotTrack | None,
    duration: float,
    tag_expr=None,
    tags: list[MetadataTag] | None = None,
) -> list[Segment]:
    """Full V1 post-processing: merge -> expand -> snap -> tag filter -> budget.

    The tag filter and budget run last so personalization never produces
    fragments below the minimum clip length.
    """
    out = merge_close(segments, cfg.merge_gap)
    out = expand_short(out, cfg.min_len, duration)
    if shots is not None and cfg.snap_mode != "none":
        out = snap_to_shots(out, shots, cfg.snap_mode)
    if tag_expr is not None:
        out = filter_by_tags(out, tag_expr, tags or [], cfg.tag_min_overlap)
    return enforce_budget(out, cfg.max_total)
