"""Segment type and half-open interval arithmetic used throughout the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

SEGMENT_SOURCES = ("v1_seed", "v2_event", "contextual", "manual")


@dataclass(frozen=True)
class Segment:
    """A half-open [start, end) interval of content time, with a curation score.

    `source` records which pipeline produced it; `labels` carries tag or
    event labels attached along the way.
    """

    start: float
    end: float
    score: float = 0.0
    source: str = "v1_seed"
    labels: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError(f"segment end must exceed start: [{self.start}, {self.end})")
        if self.score < 0:
            raise ValueError(f"segment score must be >= 0, got {self.score}")
        if self.source not in SEGMENT_SOURCES:
            raise ValueError(f"unknown segment source {self.source!r}")
        if not isinstance(self.labels, frozenset):
            object.__setattr__(self, "labels", frozenset(self.labels))

    @property
    def duration(self) -> float:
        return self.end - self.start

    def with_bounds(self, start: float, end: float) -> "Segment":
        return replace(self, start=start, end=end)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "score": self.score,
            "source": self.source,
            "labels": sorted(self.labels),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Segment":
        return cls(
            start=float(d["start"]),
            end=float(d["end"]),
            score=float(d.get("score", 0.0)),
            source=d.get("source", "v1_seed"),
            labels=frozenset(d.get("labels", ())),
        )


def overlap_seconds(a_start: float, a_end: float, b_start: float, b_end: float) -> float:
    """Length of the intersection of two half-open intervals (0 when disjoint)."""
    return max(0.0, min(a_end, b_end) - max(a_start, b_start))


def union_intervals(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Collapse intervals into a sorted list of disjoint half-open spans.

    Touching intervals ([0,2) + [2,5)) merge; the result covers the same points.
    """
    if not intervals:
        return []
    out: list[tuple[float, float]] = []
    for start, end in sorted(intervals):
        if out and start <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], end))
        else:
            out.append((start, end))
    return out


def union_length(intervals: list[tuple[float, float]]) -> float:
    return sum(end - start for start, end in union_intervals(intervals))


def iou(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Intersection-over-union of two intervals (0 when either is empty)."""
    inter = overlap_seconds(a[0], a[1], b[0], b[1])
    union = (a[1] - a[0]) + (b[1] - b[0]) - inter
    return inter / union if union > 0 else 0.0


def assert_sorted_disjoint(segments: list[Segment]) -> None:
    """Raise ValueError unless segments are chronological and non-overlapping."""
    for prev, cur in zip(segments, segments[1:]):
        if cur.start < prev.end:
            raise ValueError(
                f"segments overlap or are unsorted: [{prev.start}, {prev.end}) then [{cur.start}, {cur.end})"
            )
